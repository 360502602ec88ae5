//! Angles written either in radians or as multiples of π
//! (`"0.5pi"`, `"pi/20"`, `"-3pi/8"`, `"2*pi"`, `"π/4"`).

use std::f64::consts::PI;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

pub fn parse_angle(text: &str) -> Result<f64, String> {
    let s: String = text
        .trim()
        .to_ascii_lowercase()
        .replace('π', "pi")
        .replace(' ', "");
    if s.is_empty() {
        return Err("empty angle".into());
    }
    let value = match s.find("pi") {
        None => s
            .parse::<f64>()
            .map_err(|_| format!("cannot read angle {text:?}"))?,
        Some(at) => {
            let prefix = s[..at].trim_end_matches('*');
            let suffix = &s[at + 2..];
            let factor = match prefix {
                "" | "+" => 1.0,
                "-" => -1.0,
                p => p
                    .parse::<f64>()
                    .map_err(|_| format!("cannot read multiple of pi in {text:?}"))?,
            };
            let divisor = match suffix {
                "" => 1.0,
                d => d
                    .strip_prefix('/')
                    .and_then(|d| d.parse::<f64>().ok())
                    .filter(|d| *d != 0.0)
                    .ok_or_else(|| format!("cannot read divisor in {text:?}"))?,
            };
            factor * PI / divisor
        }
    };
    if value.is_finite() {
        Ok(value)
    } else {
        Err(format!("angle {text:?} is not finite"))
    }
}

/// Radians; deserializes from a number or an angle string, serializes as
/// a plain number.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Angle(pub f64);

impl Angle {
    pub fn radians(self) -> f64 {
        self.0
    }
}

impl fmt::Display for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl std::str::FromStr for Angle {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_angle(s).map(Angle)
    }
}

impl Serialize for Angle {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_f64(self.0)
    }
}

impl<'de> Deserialize<'de> for Angle {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Number(f64),
            Text(String),
        }
        match Raw::deserialize(deserializer)? {
            Raw::Number(x) if x.is_finite() => Ok(Angle(x)),
            Raw::Number(x) => Err(serde::de::Error::custom(format!("angle {x} is not finite"))),
            Raw::Text(t) => parse_angle(&t).map(Angle).map_err(serde::de::Error::custom),
        }
    }
}

//! The pinned DPV subset.
//!
//! Closed enumerations for processing and measures; personal data and
//! purposes additionally accept `x-`-prefixed extension names.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown {vocabulary} value `{value}`")]
pub struct UnknownTerm {
    pub vocabulary: &'static str,
    pub value: String,
}

fn is_extension(name: &str) -> bool {
    name.strip_prefix("x-").is_some_and(|rest| {
        !rest.is_empty()
            && rest.chars().next().is_some_and(|c| c.is_ascii_alphanumeric())
            && rest.chars().all(|c| c.is_ascii_alphanumeric() || c == '-' || c == '_')
    })
}

macro_rules! string_serde {
    ($ty:ty) => {
        impl Serialize for $ty {
            fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
                s.serialize_str(self.as_str())
            }
        }

        impl<'de> Deserialize<'de> for $ty {
            fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
                let s = String::deserialize(d)?;
                s.parse().map_err(serde::de::Error::custom)
            }
        }

        impl fmt::Display for $ty {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(self.as_str())
            }
        }
    };
}

macro_rules! closed_enum {
    ($(#[$meta:meta])* $name:ident, $vocab:literal, [$($variant:ident),+ $(,)?]) => {
        $(#[$meta])*
        #[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
        pub enum $name {
            $($variant),+
        }

        impl $name {
            pub const ALL: &'static [$name] = &[$($name::$variant),+];

            pub fn as_str(&self) -> &'static str {
                match self {
                    $($name::$variant => stringify!($variant)),+
                }
            }
        }

        impl FromStr for $name {
            type Err = UnknownTerm;

            fn from_str(s: &str) -> Result<Self, Self::Err> {
                match s {
                    $(stringify!($variant) => Ok($name::$variant),)+
                    _ => Err(UnknownTerm { vocabulary: $vocab, value: s.to_string() }),
                }
            }
        }

        string_serde!($name);
    };
}

closed_enum!(
    /// Processing operations a slice can perform on personal data.
    ProcessingCategory,
    "processing category",
    [Collect, Store, Use, Share, Combine, Erase]
);

impl ProcessingCategory {
    /// Operations that consume data and therefore call for prior
    /// pseudonymisation.
    pub fn is_consuming(self) -> bool {
        matches!(self, Self::Store | Self::Use | Self::Share | Self::Erase)
    }
}

closed_enum!(TechnicalMeasure, "technical measure", [HashFunction, Encryption, Pseudonymisation]);

closed_enum!(DataSource, "data source", [FirstParty, ThirdParty]);

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PersonalDataCategory {
    Email,
    Location,
    Phone,
    Contact,
    DeviceId,
    /// Extension name, always `x-` prefixed.
    Other(String),
}

impl PersonalDataCategory {
    pub fn as_str(&self) -> &str {
        match self {
            Self::Email => "Email",
            Self::Location => "Location",
            Self::Phone => "Phone",
            Self::Contact => "Contact",
            Self::DeviceId => "DeviceId",
            Self::Other(s) => s,
        }
    }
}

impl FromStr for PersonalDataCategory {
    type Err = UnknownTerm;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "Email" => Self::Email,
            "Location" => Self::Location,
            "Phone" => Self::Phone,
            "Contact" => Self::Contact,
            "DeviceId" => Self::DeviceId,
            other if is_extension(other) => Self::Other(other.to_string()),
            other => {
                return Err(UnknownTerm { vocabulary: "personal data category", value: other.to_string() })
            }
        })
    }
}

string_serde!(PersonalDataCategory);

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Purpose {
    CommunicationManagement,
    Other(String),
}

impl Purpose {
    pub fn as_str(&self) -> &str {
        match self {
            Self::CommunicationManagement => "CommunicationManagement",
            Self::Other(s) => s,
        }
    }
}

impl FromStr for Purpose {
    type Err = UnknownTerm;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "CommunicationManagement" => Ok(Self::CommunicationManagement),
            other if is_extension(other) => Ok(Self::Other(other.to_string())),
            other => Err(UnknownTerm { vocabulary: "purpose", value: other.to_string() }),
        }
    }
}

string_serde!(Purpose);

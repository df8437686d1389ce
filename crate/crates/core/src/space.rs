//! Space descriptors and their textual form.
//!
//! Textual forms: `rh:R,S`, `ch:R,S`, `rp:M`, `cp:M`, and
//! `prod:<part>,<part>,...` where each part is written compactly as
//! `rhR.S`, `chR.S`, `rpM` or `cpM` (for example `prod:rp3,rp2`).

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::algebra::{make_presentation, Presentation, PresentationSpec};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum SpaceDescriptor {
    RealMilnor { r: u32, s: u32 },
    ComplexMilnor { r: u32, s: u32 },
    RealProj(u32),
    ComplexProj(u32),
    Product(Vec<SpaceDescriptor>),
}

impl SpaceDescriptor {
    pub fn validate(&self) -> Result<()> {
        match self {
            SpaceDescriptor::RealMilnor { r, s } | SpaceDescriptor::ComplexMilnor { r, s } => {
                if s > r {
                    return Err(Error::invalid(format!("Milnor manifold needs s <= r, got r={r}, s={s}")));
                }
                if *r == 0 {
                    return Err(Error::invalid("Milnor manifold needs r >= 1"));
                }
                Ok(())
            }
            SpaceDescriptor::RealProj(_) | SpaceDescriptor::ComplexProj(_) => Ok(()),
            SpaceDescriptor::Product(parts) => {
                if parts.is_empty() {
                    return Err(Error::invalid("product needs at least one factor"));
                }
                parts.iter().try_for_each(|p| {
                    if matches!(p, SpaceDescriptor::Product(_)) {
                        Err(Error::invalid("nested products are not supported"))
                    } else {
                        p.validate()
                    }
                })
            }
        }
    }

    pub fn dimension(&self) -> u32 {
        match self {
            SpaceDescriptor::RealMilnor { r, s } => r + s - 1,
            SpaceDescriptor::ComplexMilnor { r, s } => 2 * (r + s - 1),
            SpaceDescriptor::RealProj(m) => *m,
            SpaceDescriptor::ComplexProj(m) => 2 * m,
            SpaceDescriptor::Product(parts) => parts.iter().map(|p| p.dimension()).sum(),
        }
    }

    /// True when every factor is a complex space (hence simply connected).
    pub fn is_complex(&self) -> bool {
        match self {
            SpaceDescriptor::ComplexMilnor { .. } | SpaceDescriptor::ComplexProj(_) => true,
            SpaceDescriptor::RealMilnor { .. } | SpaceDescriptor::RealProj(_) => false,
            SpaceDescriptor::Product(parts) => parts.iter().all(|p| p.is_complex()),
        }
    }

    pub fn presentation_spec(&self) -> PresentationSpec {
        match self {
            SpaceDescriptor::RealMilnor { r, s } => PresentationSpec::Milnor {
                s: *s,
                r: *r,
                gen_degree: 1,
            },
            SpaceDescriptor::ComplexMilnor { r, s } => PresentationSpec::Milnor {
                s: *s,
                r: *r,
                gen_degree: 2,
            },
            SpaceDescriptor::RealProj(m) => PresentationSpec::Truncated { m: *m, gen_degree: 1 },
            SpaceDescriptor::ComplexProj(m) => PresentationSpec::Truncated { m: *m, gen_degree: 2 },
            SpaceDescriptor::Product(parts) => PresentationSpec::Product {
                factors: parts.iter().map(|p| p.presentation_spec()).collect(),
            },
        }
    }

    fn compact(&self) -> String {
        match self {
            SpaceDescriptor::RealMilnor { r, s } => format!("rh{r}.{s}"),
            SpaceDescriptor::ComplexMilnor { r, s } => format!("ch{r}.{s}"),
            SpaceDescriptor::RealProj(m) => format!("rp{m}"),
            SpaceDescriptor::ComplexProj(m) => format!("cp{m}"),
            SpaceDescriptor::Product(_) => unreachable!("nested products are rejected"),
        }
    }

    fn parse_compact(part: &str) -> Result<SpaceDescriptor> {
        let bad = || Error::invalid(format!("bad product factor `{part}`"));
        let (tag, rest) = part.split_at(part.len().min(2));
        let num = |t: &str| t.parse::<u32>().map_err(|_| bad());
        let pair = |t: &str| -> Result<(u32, u32)> {
            let (r, s) = t.split_once('.').ok_or_else(bad)?;
            Ok((num(r)?, num(s)?))
        };
        Ok(match tag {
            "rh" => {
                let (r, s) = pair(rest)?;
                SpaceDescriptor::RealMilnor { r, s }
            }
            "ch" => {
                let (r, s) = pair(rest)?;
                SpaceDescriptor::ComplexMilnor { r, s }
            }
            "rp" => SpaceDescriptor::RealProj(num(rest)?),
            "cp" => SpaceDescriptor::ComplexProj(num(rest)?),
            _ => return Err(bad()),
        })
    }
}

/// Cohomology presentation of a space.
pub fn cohomology_of(space: &SpaceDescriptor) -> Result<Arc<Presentation>> {
    space.validate()?;
    make_presentation(&space.presentation_spec())
}

impl fmt::Display for SpaceDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpaceDescriptor::RealMilnor { r, s } => write!(f, "rh:{r},{s}"),
            SpaceDescriptor::ComplexMilnor { r, s } => write!(f, "ch:{r},{s}"),
            SpaceDescriptor::RealProj(m) => write!(f, "rp:{m}"),
            SpaceDescriptor::ComplexProj(m) => write!(f, "cp:{m}"),
            SpaceDescriptor::Product(parts) => {
                let parts: Vec<String> = parts.iter().map(|p| p.compact()).collect();
                write!(f, "prod:{}", parts.join(","))
            }
        }
    }
}

impl FromStr for SpaceDescriptor {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let text = text.trim();
        let (tag, rest) = text
            .split_once(':')
            .ok_or_else(|| Error::invalid(format!("space `{text}` lacks a `kind:` prefix")))?;
        let bad = || Error::invalid(format!("bad space `{text}`"));
        let num = |t: &str| t.trim().parse::<u32>().map_err(|_| bad());
        let space = match tag {
            "rh" | "ch" => {
                let (r, s) = rest.split_once(',').ok_or_else(bad)?;
                let (r, s) = (num(r)?, num(s)?);
                if tag == "rh" {
                    SpaceDescriptor::RealMilnor { r, s }
                } else {
                    SpaceDescriptor::ComplexMilnor { r, s }
                }
            }
            "rp" => SpaceDescriptor::RealProj(num(rest)?),
            "cp" => SpaceDescriptor::ComplexProj(num(rest)?),
            "prod" => SpaceDescriptor::Product(
                rest.split(',')
                    .map(|p| SpaceDescriptor::parse_compact(p.trim()))
                    .collect::<Result<Vec<_>>>()?,
            ),
            _ => return Err(bad()),
        };
        space.validate()?;
        Ok(space)
    }
}

impl Serialize for SpaceDescriptor {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for SpaceDescriptor {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print() {
        for text in ["rh:4,3", "ch:4,3", "rp:2", "cp:5", "prod:rp3,rp2", "prod:rh2.1,cp1"] {
            let s: SpaceDescriptor = text.parse().unwrap();
            assert_eq!(s.to_string(), text);
        }
        assert!("rh:3,4".parse::<SpaceDescriptor>().is_err());
        assert!("rh:0,0".parse::<SpaceDescriptor>().is_err());
        assert!("torus:2".parse::<SpaceDescriptor>().is_err());
        assert!("prod:rp3,xx2".parse::<SpaceDescriptor>().is_err());
    }

    #[test]
    fn dimensions() {
        assert_eq!(SpaceDescriptor::RealMilnor { r: 4, s: 3 }.dimension(), 6);
        assert_eq!(SpaceDescriptor::ComplexMilnor { r: 4, s: 3 }.dimension(), 12);
        let prod: SpaceDescriptor = "prod:rp3,rp2".parse().unwrap();
        assert_eq!(prod.dimension(), 5);
    }

    #[test]
    fn cohomology_presentations() {
        assert_eq!(
            SpaceDescriptor::RealMilnor { r: 4, s: 3 }.presentation_spec(),
            PresentationSpec::Milnor { s: 3, r: 4, gen_degree: 1 }
        );
        assert_eq!(
            SpaceDescriptor::ComplexMilnor { r: 4, s: 3 }.presentation_spec(),
            PresentationSpec::Milnor { s: 3, r: 4, gen_degree: 2 }
        );
        let prod: SpaceDescriptor = "prod:rp3,rp2".parse().unwrap();
        assert_eq!(
            prod.presentation_spec(),
            PresentationSpec::Product {
                factors: vec![PresentationSpec::truncated(3), PresentationSpec::truncated(2)]
            }
        );
        let p = cohomology_of(&prod).unwrap();
        assert_eq!(p.top_degree() as u32, prod.dimension());
    }
}

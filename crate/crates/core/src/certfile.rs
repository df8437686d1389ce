//! JSON certificate files.
//!
//! ```json
//! {
//!   "schema": "tcn-certificate/1",
//!   "space": "rp:2",
//!   "n": 2,
//!   "witness": "zero-divisor",
//!   "factors": [{ "expr": "x1+x2", "multiplicity": 3 }],
//!   "claimedCup": 3,
//!   "claimedTcLower": 4,
//!   "provenance": "proj t=1"
//! }
//! ```
//!
//! `witness` defaults to `zero-divisor`; `provenance` is optional. Printing
//! is canonical, so a printed file parses and prints back byte for byte.

use serde::{Deserialize, Serialize};

use crate::cuplength::{Certificate, Factor, WitnessKind};
use crate::error::{Error, Result};
use crate::expr::parse_factor_expr;
use crate::space::{cohomology_of, SpaceDescriptor};

pub const SCHEMA: &str = "tcn-certificate/1";

#[derive(Debug, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
struct FileFactor {
    expr: String,
    multiplicity: u32,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
struct CertificateFile {
    schema: String,
    space: SpaceDescriptor,
    n: usize,
    #[serde(default = "default_witness")]
    witness: WitnessKindName,
    factors: Vec<FileFactor>,
    claimed_cup: u32,
    claimed_tc_lower: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    provenance: Option<String>,
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
enum WitnessKindName {
    ZeroDivisor,
    CupLength,
}

fn default_witness() -> WitnessKindName {
    WitnessKindName::ZeroDivisor
}

/// Parses and validates a certificate file.
pub fn parse_certificate(text: &str) -> Result<Certificate> {
    let file: CertificateFile = serde_json::from_str(text).map_err(|e| Error::Schema(e.to_string()))?;
    if file.schema != SCHEMA {
        return Err(Error::Schema(format!("unsupported schema `{}`, expected `{SCHEMA}`", file.schema)));
    }
    let pres = cohomology_of(&file.space)?;
    let factors = file
        .factors
        .iter()
        .map(|f| {
            Ok(Factor {
                expr: parse_factor_expr(&f.expr, file.n, &pres)?,
                multiplicity: f.multiplicity,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let cert = Certificate {
        space: file.space,
        n: file.n,
        witness: match file.witness {
            WitnessKindName::ZeroDivisor => WitnessKind::ZeroDivisor,
            WitnessKindName::CupLength => WitnessKind::CupLength,
        },
        factors,
        claimed_cup: file.claimed_cup,
        claimed_tc_lower: file.claimed_tc_lower,
        provenance: file.provenance,
    };
    cert.check_invariants()?;
    Ok(cert)
}

/// Canonical text of a certificate, newline-terminated.
pub fn print_certificate(c: &Certificate) -> String {
    let file = CertificateFile {
        schema: SCHEMA.into(),
        space: c.space.clone(),
        n: c.n,
        witness: match c.witness {
            WitnessKind::ZeroDivisor => WitnessKindName::ZeroDivisor,
            WitnessKind::CupLength => WitnessKindName::CupLength,
        },
        factors: c
            .factors
            .iter()
            .map(|f| FileFactor {
                expr: f.expr.to_string(),
                multiplicity: f.multiplicity,
            })
            .collect(),
        claimed_cup: c.claimed_cup,
        claimed_tc_lower: c.claimed_tc_lower,
        provenance: c.provenance.clone(),
    };
    let mut text = serde_json::to_string_pretty(&file).expect("certificate serializes");
    text.push('\n');
    text
}

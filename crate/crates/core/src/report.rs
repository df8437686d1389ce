//! Markdown, CSV and JSON renderings of bound reports.

use std::fmt;
use std::str::FromStr;

use crate::bounds::{BoundReport, Quantity, Side};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Markdown,
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "md" | "markdown" => Ok(Format::Markdown),
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            _ => Err(Error::invalid(format!("unknown format `{s}`"))),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Markdown => "md",
            Format::Csv => "csv",
            Format::Json => "json",
        })
    }
}

const HEADER: [&str; 7] = ["space", "n", "quantity", "lower", "upper", "verified lower", "trace"];

fn quantity_label(r: &BoundReport) -> String {
    match (r.quantity, r.group) {
        (Quantity::EqTc, Some(g)) => format!("TC_{g}"),
        (q, _) => q.to_string(),
    }
}

fn trace_cell(r: &BoundReport) -> String {
    let mut parts: Vec<String> = r
        .trace
        .iter()
        .map(|e| {
            let rel = match e.side {
                Side::Lower => ">=",
                Side::Upper => "<=",
            };
            let value = e.value.map_or("?".to_string(), |v| v.to_string());
            format!("{} {rel} {value} [{}]", e.rule, e.status)
        })
        .collect();
    if !r.consistent {
        parts.push("INCONSISTENT: lower exceeds upper".into());
    }
    parts.join("; ")
}

fn row(r: &BoundReport) -> [String; 7] {
    [
        r.space.to_string(),
        r.n.to_string(),
        quantity_label(r),
        r.lower.to_string(),
        r.upper.to_string(),
        r.verified_lower.map_or("-".to_string(), |v| v.to_string()),
        trace_cell(r),
    ]
}

pub fn emit_report(reports: &[BoundReport], format: Format) -> String {
    match format {
        Format::Markdown => {
            let mut out = format!("| {} |\n", HEADER.join(" | "));
            out.push_str(&format!("|{}\n", "---|".repeat(HEADER.len())));
            for r in reports {
                out.push_str(&format!("| {} |\n", row(r).join(" | ")));
            }
            out
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(HEADER).expect("in-memory write");
            for r in reports {
                w.write_record(row(r)).expect("in-memory write");
            }
            String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8")
        }
        Format::Json => {
            let mut s = serde_json::to_string_pretty(reports).expect("reports serialize");
            s.push('\n');
            s
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::{eqtc_bounds, tc_bounds, Group, TcOptions};
    use crate::space::SpaceDescriptor;

    #[test]
    fn markdown_row() {
        let r = tc_bounds(&SpaceDescriptor::RealMilnor { r: 4, s: 3 }, 2, &TcOptions::default()).unwrap();
        let md = emit_report(&[r], Format::Markdown);
        assert!(md.lines().nth(2).unwrap().starts_with("| rh:4,3 | 2 | TC | 11 | 13 |"), "{md}");
    }

    #[test]
    fn empty_table_is_header_only() {
        assert_eq!(emit_report(&[], Format::Markdown).lines().count(), 2);
        assert_eq!(emit_report(&[], Format::Csv), "space,n,quantity,lower,upper,verified lower,trace\n");
        assert_eq!(emit_report(&[], Format::Json), "[]\n");
    }

    #[test]
    fn json_is_deterministic() {
        let space = SpaceDescriptor::RealMilnor { r: 5, s: 3 };
        let make = || eqtc_bounds(&space, Group::Z2, 2, &TcOptions::default()).unwrap();
        let a = emit_report(&[make()], Format::Json);
        assert_eq!(a, emit_report(&[make()], Format::Json));
        assert!(a.contains("\"free involution, doubling subfamily\""));
        let v: serde_json::Value = serde_json::from_str(&a).unwrap();
        assert_eq!(v[0]["lower"], 11);
        assert_eq!(v[0]["upper"], 15);
    }

    #[test]
    fn csv_quotes_fields() {
        let r = tc_bounds(&SpaceDescriptor::RealProj(2), 2, &TcOptions::default()).unwrap();
        let text = emit_report(&[r], Format::Csv);
        let mut rd = csv::Reader::from_reader(text.as_bytes());
        let rec = rd.records().next().unwrap().unwrap();
        assert_eq!(&rec[0], "rp:2");
        assert_eq!(&rec[3], "4");
        assert_eq!(&rec[4], "5");
    }
}

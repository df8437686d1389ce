//! Interval bounds for the category of powers, `TC_n` and `TC_{G,n}`, with
//! a trace recording the source and status of every rule.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::Serialize;

use crate::algebra::Presentation;
use crate::certgen::{cert_case1, cert_case2, cert_proj, cert_r2t, retarget, top_class_in, Case2Outcome};
use crate::cuplength::{
    cup_exact, cup_search_in, default_pool, verify_in, Certificate, OracleConfig, SearchStrategy, Verdict,
};
use crate::error::{Error, Result};
use crate::space::{cohomology_of, SpaceDescriptor};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Trichotomy {
    Yes,
    No,
    OutOfHypothesis,
}

/// Free involutions on `RH_{r,s}`, decided inside `1 < s < r`, `r != 2 mod 4`.
pub fn admits_free_involution(r: u32, s: u32) -> Trichotomy {
    if !(1 < s && s < r) || r % 4 == 2 {
        return Trichotomy::OutOfHypothesis;
    }
    if r % 2 == 1 && s % 2 == 1 {
        Trichotomy::Yes
    } else {
        Trichotomy::No
    }
}

/// Free circle actions on a real Milnor manifold.
pub fn admits_free_circle(space: &SpaceDescriptor) -> Result<bool> {
    match space {
        SpaceDescriptor::RealMilnor { r, s } => {
            if *s < 1 || s > r {
                return Err(Error::Hypothesis(format!("circle criterion needs 1 <= s <= r, got r={r}, s={s}")));
            }
            Ok(r % 2 == 1 && s % 2 == 1)
        }
        other => Err(Error::Hypothesis(format!(
            "circle criterion is stated for real Milnor manifolds only, not `{other}`"
        ))),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Group {
    Z2,
    Circle,
}

impl Group {
    pub fn dimension(self) -> u32 {
        match self {
            Group::Z2 => 0,
            Group::Circle => 1,
        }
    }
}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Group::Z2 => "z2",
            Group::Circle => "s1",
        })
    }
}

impl FromStr for Group {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "z2" | "Z2" => Ok(Group::Z2),
            "s1" | "S1" | "circle" => Ok(Group::Circle),
            _ => Err(Error::invalid(format!("unknown group `{s}`"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Quantity {
    #[serde(rename = "cat")]
    CatOfPower,
    #[serde(rename = "TC")]
    Tc,
    #[serde(rename = "TC_G")]
    EqTc,
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Quantity::CatOfPower => "cat",
            Quantity::Tc => "TC",
            Quantity::EqTc => "TC_G",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    MachineVerified,
    PaperClaimed,
    /// A generated certificate whose product was checked and vanishes.
    Refuted,
    /// The source could not run (resource limit, failed search).
    Unavailable,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::MachineVerified => "machine-verified",
            Status::PaperClaimed => "paper-claimed",
            Status::Refuted => "refuted",
            Status::Unavailable => "unavailable",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Side {
    Lower,
    Upper,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TraceEntry {
    pub rule: String,
    pub anchor: String,
    pub side: Side,
    pub value: Option<u32>,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl TraceEntry {
    fn counts(&self) -> bool {
        matches!(self.status, Status::MachineVerified | Status::PaperClaimed) && self.value.is_some()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct BoundReport {
    pub space: SpaceDescriptor,
    pub quantity: Quantity,
    pub n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub group: Option<Group>,
    pub lower: u32,
    pub upper: u32,
    pub verified_lower: Option<u32>,
    /// False when a lower bound exceeds an upper bound.
    pub consistent: bool,
    pub trace: Vec<TraceEntry>,
}

impl BoundReport {
    fn assemble(space: &SpaceDescriptor, quantity: Quantity, n: usize, group: Option<Group>, trace: Vec<TraceEntry>) -> Self {
        let pick = |side| trace.iter().filter(move |e: &&TraceEntry| e.side == side && e.counts());
        let lower = pick(Side::Lower).filter_map(|e| e.value).max().unwrap_or(1);
        let upper = pick(Side::Upper).filter_map(|e| e.value).min().unwrap_or(u32::MAX);
        let verified_lower = pick(Side::Lower)
            .filter(|e| e.status == Status::MachineVerified)
            .filter_map(|e| e.value)
            .max();
        BoundReport {
            space: space.clone(),
            quantity,
            n,
            group,
            lower,
            upper,
            verified_lower,
            consistent: lower <= upper,
            trace,
        }
    }

    pub fn is_exact(&self) -> bool {
        self.consistent && self.lower == self.upper
    }

    /// Trace rows of a given side and status.
    pub fn entries(&self, side: Side, status: Status) -> impl Iterator<Item = &TraceEntry> {
        self.trace.iter().filter(move |e| e.side == side && e.status == status)
    }
}

#[derive(Clone, Copy, Debug)]
pub struct TcOptions {
    pub use_oracle: bool,
    pub use_certs: bool,
    pub use_monotonicity: bool,
    pub oracle: OracleConfig,
    /// Beam width used when the oracle hits a resource limit.
    pub fallback_width: usize,
}

impl Default for TcOptions {
    fn default() -> Self {
        TcOptions {
            use_oracle: false,
            use_certs: true,
            use_monotonicity: true,
            oracle: OracleConfig::default(),
            fallback_width: 32,
        }
    }
}

fn entry(rule: &str, anchor: &str, side: Side, value: Option<u32>, status: Status) -> TraceEntry {
    TraceEntry {
        rule: rule.into(),
        anchor: anchor.into(),
        side,
        value,
        status,
        note: None,
    }
}

fn with_note(mut e: TraceEntry, note: impl Into<String>) -> TraceEntry {
    e.note = Some(note.into());
    e
}

fn need_n(n: usize, min: usize) -> Result<()> {
    if n < min {
        return Err(Error::invalid(format!("n must be at least {min}, got {n}")));
    }
    Ok(())
}

/// Largest `t >= min_t` with `2^t <= x`.
fn floor_log2(x: u32, min_t: u32) -> Option<u32> {
    if x == 0 {
        return None;
    }
    let t = 31 - x.leading_zeros();
    (t >= min_t).then_some(t)
}

fn is_pow2(x: u32) -> Option<u32> {
    x.is_power_of_two().then(|| x.trailing_zeros())
}

/// Best `2^t1 + 2^t2` over `t1, t2 >= 1` with `s >= 2^t1 + 1, r >= 2^t2`
/// or `r >= 2^t1 + 1, s >= 2^t2`.
fn best_doubling_pair(r: u32, s: u32) -> Option<(u32, u32)> {
    let option = |big_plus_one: u32, other: u32| {
        let t1 = floor_log2(big_plus_one.checked_sub(1)?, 1)?;
        let t2 = floor_log2(other, 1)?;
        Some((t1, t2))
    };
    [option(s, r), option(r, s)]
        .into_iter()
        .flatten()
        .max_by_key(|&(t1, t2)| ((1u64 << t1) + (1u64 << t2), t1))
}

fn milnor_params(space: &SpaceDescriptor) -> Option<(u32, u32)> {
    match space {
        SpaceDescriptor::RealMilnor { r, s } | SpaceDescriptor::ComplexMilnor { r, s } => Some((*r, *s)),
        _ => None,
    }
}

/// Bounds on `cat(X^n)`.
pub fn cat_bounds(space: &SpaceDescriptor, n: usize) -> Result<BoundReport> {
    need_n(n, 1)?;
    let pres = cohomology_of(space)?;
    let mut trace = cat_lower(space, &pres, n)?;
    trace.extend(cat_upper(space, n));
    Ok(BoundReport::assemble(space, Quantity::CatOfPower, n, None, trace))
}

fn cat_lower(space: &SpaceDescriptor, pres: &Arc<Presentation>, n: usize) -> Result<Vec<TraceEntry>> {
    let witness = top_class_in(space, pres, n);
    let report = verify_in(&witness, pres)?;
    let rule = "top-class cup-length";
    let anchor = "cup + 1 <= cat";
    Ok(vec![match report.verified_lower_bound() {
        Some(v) => entry(rule, anchor, Side::Lower, Some(v), Status::MachineVerified),
        None => with_note(
            entry(rule, anchor, Side::Lower, Some(witness.claimed_tc_lower), Status::Refuted),
            format!("{:?}", report.verdict),
        ),
    }])
}

fn cat_upper(space: &SpaceDescriptor, n: usize) -> Vec<TraceEntry> {
    let dim = n as u32 * space.dimension();
    let mut out = vec![entry(
        "dimension",
        "cat <= dim + 1",
        Side::Upper,
        Some(dim + 1),
        Status::PaperClaimed,
    )];
    if space.is_complex() {
        out.push(entry(
            "simply connected dimension",
            "cat <= dim/2 + 1 for simply connected spaces",
            Side::Upper,
            Some(dim / 2 + 1),
            Status::PaperClaimed,
        ));
    }
    out
}

/// Bounds on `TC_n(X)`.
pub fn tc_bounds(space: &SpaceDescriptor, n: usize, opts: &TcOptions) -> Result<BoundReport> {
    need_n(n, 2)?;
    let trace = tc_trace(space, n, opts)?;
    Ok(BoundReport::assemble(space, Quantity::Tc, n, None, trace))
}

fn tc_trace(space: &SpaceDescriptor, n: usize, opts: &TcOptions) -> Result<Vec<TraceEntry>> {
    let pres = cohomology_of(space)?;
    let mut trace = Vec::new();

    let mut lower = cat_lower(space, &pres, n - 1)?;
    for e in &mut lower {
        e.rule = "category of the (n-1)-fold power".into();
        e.anchor = "cat(X^(n-1)) <= TC_n".into();
    }
    trace.extend(lower);

    if opts.use_certs {
        for (rule, outcome) in applicable_certificates(space, n)? {
            trace.push(match outcome {
                Ok(cert) => certificate_entry(&rule, &cert, &pres)?,
                Err(note) => with_note(
                    entry(&rule, "cup(X, n) + 1 <= TC_n", Side::Lower, None, Status::Unavailable),
                    note,
                ),
            });
        }
    }

    if opts.use_oracle {
        trace.push(oracle_entry(space, &pres, n, opts)?);
    }

    trace.extend(paper_lower(space, n, opts.use_monotonicity));

    let dim = n as u32 * space.dimension();
    trace.push(entry(
        "dimension",
        "TC_n <= n dim + 1",
        Side::Upper,
        Some(dim + 1),
        Status::PaperClaimed,
    ));
    for mut e in cat_upper(space, n) {
        e.rule = format!("category of the n-fold power ({})", e.rule);
        e.anchor = format!("TC_n <= cat(X^n); {}", e.anchor);
        trace.push(e);
    }
    if let SpaceDescriptor::RealMilnor { s, .. } = space {
        if *s >= 1 && admits_free_circle(space)? {
            trace.push(with_note(
                entry(
                    "free circle action",
                    "TC_n <= n dim for free circle actions",
                    Side::Upper,
                    Some(dim),
                    Status::PaperClaimed,
                ),
                "the argument's text writes n(r+s+1); the statement n(r+s-1) is used",
            ));
        }
    }
    Ok(trace)
}

fn certificate_entry(rule: &str, cert: &Certificate, pres: &Arc<Presentation>) -> Result<TraceEntry> {
    let report = verify_in(cert, pres)?;
    let anchor = "cup(X, n) + 1 <= TC_n";
    Ok(match report.verdict {
        Verdict::Verified => entry(rule, anchor, Side::Lower, report.verified_lower_bound(), Status::MachineVerified),
        v => with_note(
            entry(rule, anchor, Side::Lower, Some(cert.claimed_tc_lower), Status::Refuted),
            format!("{v:?}"),
        ),
    })
}

fn oracle_entry(space: &SpaceDescriptor, pres: &Arc<Presentation>, n: usize, opts: &TcOptions) -> Result<TraceEntry> {
    let anchor = "cup(X, n) + 1 <= TC_n";
    match cup_exact(pres, n, &opts.oracle) {
        Ok(c) => Ok(entry("ideal-power oracle", anchor, Side::Lower, Some(c.value + 1), Status::MachineVerified)),
        Err(e) if e.is_resource_limit() => {
            let pool = default_pool(pres, n);
            let found = cup_search_in(
                space,
                pres,
                n,
                &pool,
                SearchStrategy::Beam {
                    width: opts.fallback_width,
                },
            )?;
            let report = verify_in(&found.certificate, pres)?;
            Ok(with_note(
                entry(
                    "beam search",
                    anchor,
                    Side::Lower,
                    report.verified_lower_bound(),
                    if report.is_verified() {
                        Status::MachineVerified
                    } else {
                        Status::Unavailable
                    },
                ),
                format!("oracle unavailable: {e}"),
            ))
        }
        Err(e) => Err(e),
    }
}

type CertOutcome = std::result::Result<Certificate, String>;

/// Generated certificates that apply to `space`, by rule name.
pub fn applicable_certificates(space: &SpaceDescriptor, n: usize) -> Result<Vec<(String, CertOutcome)>> {
    let mut out = Vec::new();
    match space {
        SpaceDescriptor::RealMilnor { r, s } | SpaceDescriptor::ComplexMilnor { r, s } => {
            let (r, s) = (*r, *s);
            if let (Some(t1), Some(t2)) = (s.checked_sub(1).and_then(is_pow2), is_pow2(r)) {
                if s <= r {
                    out.push(("doubling family certificate (s = 2^t1 + 1, r = 2^t2)".to_string(), Ok(retarget(&cert_case1(t1, t2, n)?, space.clone()))));
                }
            }
            if let (Some(p1), Some(p2)) = (is_pow2(s), r.checked_sub(1).and_then(is_pow2)) {
                let rule = "doubling family certificate (s = 2^p1, r = 2^p2 + 1)".to_string();
                out.push(match cert_case2(p1, p2, n)? {
                    Case2Outcome::Found(c) => (rule, Ok(retarget(&c, space.clone()))),
                    Case2Outcome::NotFound { log } => (rule, Err(log.join("; "))),
                });
            }
            if let Some(t) = is_pow2(r) {
                if s >= 1 {
                    out.push(("power-of-two r certificate".to_string(), Ok(retarget(&cert_r2t(s, t, n)?, space.clone()))));
                }
            }
        }
        SpaceDescriptor::RealProj(m) | SpaceDescriptor::ComplexProj(m) => {
            if let Some(t) = floor_log2(*m, 0) {
                out.push((
                    "projective space certificate".to_string(),
                    Ok(retarget(&cert_proj(t, n)?, space.clone())),
                ));
            }
        }
        SpaceDescriptor::Product(parts) => {
            if let Some(c) = product_certificate(space, parts, n)? {
                out.push(("product of factor certificates".to_string(), Ok(c)));
            }
        }
    }
    Ok(out)
}

/// Concatenates the longest verified certificate of each factor, with
/// generators renamed into the product presentation.
fn product_certificate(space: &SpaceDescriptor, parts: &[SpaceDescriptor], n: usize) -> Result<Option<Certificate>> {
    let mut factors = Vec::new();
    for (idx, part) in parts.iter().enumerate() {
        let pres = cohomology_of(part)?;
        let mut best: Option<Certificate> = None;
        for (_, outcome) in applicable_certificates(part, n)? {
            let Ok(c) = outcome else { continue };
            if verify_in(&c, &pres)?.is_verified() && best.as_ref().is_none_or(|b| c.claimed_cup > b.claimed_cup) {
                best = Some(c);
            }
        }
        if let Some(b) = best {
            let suffix = idx + 1;
            factors.extend(b.factors.into_iter().map(|mut f| {
                f.expr = f.expr.rename(&|g| format!("{g}.{suffix}"));
                f
            }));
        }
    }
    if factors.is_empty() {
        return Ok(None);
    }
    Ok(Some(Certificate::from_factors(
        space.clone(),
        n,
        crate::cuplength::WitnessKind::ZeroDivisor,
        factors,
        Some("product of factor certificates".into()),
    )))
}

fn paper_lower(space: &SpaceDescriptor, n: usize, monotone: bool) -> Vec<TraceEntry> {
    let nn = n as u32;
    let mut out = Vec::new();
    let claim = |rule: &str, anchor: &str, v: u32| entry(rule, anchor, Side::Lower, Some(v), Status::PaperClaimed);
    if let Some((r, s)) = milnor_params(space) {
        let case1 = s.checked_sub(1).and_then(is_pow2).is_some() && is_pow2(r).is_some();
        let case2 = is_pow2(s).is_some() && r.checked_sub(1).and_then(is_pow2).is_some();
        if (case1 || case2) && s <= r {
            out.push(claim(
                "doubling family",
                "n(s+r-1) - 1 <= TC_n for doubling-family parameters",
                nn * (s + r - 1) - 1,
            ));
        }
        if is_pow2(r).is_some() && s >= 1 {
            out.push(claim(
                "power-of-two r",
                "n(s+r-1) - s + 2 <= TC_n when r = 2^t",
                nn * (s + r - 1) - s + 2,
            ));
        }
        if monotone {
            if let Some((t1, t2)) = best_doubling_pair(r, s) {
                out.push(with_note(
                    claim(
                        "doubling subfamily",
                        "n(2^t1 + 2^t2) - 1 <= TC_n by cup-length dominance",
                        nn * ((1 << t1) + (1 << t2)) - 1,
                    ),
                    format!("t1={t1}, t2={t2}"),
                ));
            }
            if let Some(t) = floor_log2(r, 0) {
                if s >= 1 {
                    out.push(with_note(
                        claim(
                            "power-of-two subfamily",
                            "n(2^t + s - 1) - s + 2 <= TC_n for r >= 2^t",
                            nn * ((1 << t) + s - 1) - s + 2,
                        ),
                        format!("t={t}"),
                    ));
                }
            }
        }
    }
    if let SpaceDescriptor::RealProj(m) = space {
        if let Some(t) = floor_log2(*m, 0) {
            if is_pow2(*m).is_some() {
                out.push(claim("projective space", "n 2^t <= TC_n(RP^m) for m = 2^t", nn << t));
            } else if monotone {
                out.push(with_note(
                    claim("projective subfamily", "n 2^t <= TC_n(RP^m) for m >= 2^t", nn << t),
                    format!("t={t}"),
                ));
            }
        }
    }
    if let SpaceDescriptor::Product(parts) = space {
        if let [SpaceDescriptor::RealProj(a), SpaceDescriptor::RealProj(b)] = parts.as_slice() {
            if let (Some(ta), Some(tb)) = (is_pow2(*a), is_pow2(*b)) {
                if ta >= 1 && tb >= 1 && *b <= a + 1 {
                    out.push(with_note(
                        claim(
                            "trivial bundle comparison",
                            "n(s+r-1) - 1 <= TC_n(RP^(r-1) x RP^s) - 1",
                            nn * (a + b),
                        ),
                        format!("r={}, s={b}", a + 1),
                    ));
                }
            }
        }
    }
    out
}

/// Whether `group` acts freely on `space`; errors explain a refusal.
pub fn check_free_action(space: &SpaceDescriptor, group: Group) -> Result<()> {
    let SpaceDescriptor::RealMilnor { r, s } = space else {
        return Err(Error::NoFreeAction(format!(
            "free-action criteria are known here only for real Milnor manifolds, not `{space}`"
        )));
    };
    match group {
        Group::Z2 => match admits_free_involution(*r, *s) {
            Trichotomy::Yes => Ok(()),
            Trichotomy::No => Err(Error::NoFreeAction(format!(
                "RH_{{{r},{s}}} admits no free involution (r and s must both be odd)"
            ))),
            Trichotomy::OutOfHypothesis => Err(Error::NoFreeAction(format!(
                "the involution criterion needs 1 < s < r and r != 2 mod 4, got r={r}, s={s}"
            ))),
        },
        Group::Circle => {
            if admits_free_circle(space).map_err(|e| Error::NoFreeAction(e.to_string()))? {
                Ok(())
            } else {
                Err(Error::NoFreeAction(format!(
                    "RH_{{{r},{s}}} admits no free circle action (r and s must both be odd)"
                )))
            }
        }
    }
}

/// Bounds on the equivariant `TC_{G,n}` for a free action of `group`.
pub fn eqtc_bounds(space: &SpaceDescriptor, group: Group, n: usize, opts: &TcOptions) -> Result<BoundReport> {
    need_n(n, 2)?;
    check_free_action(space, group)?;
    let nn = n as u32;
    let mut trace: Vec<TraceEntry> = tc_trace(space, n, opts)?
        .into_iter()
        .filter(|e| e.side == Side::Lower)
        .map(|mut e| {
            e.anchor = format!("TC_n <= TC_G,n; {}", e.anchor);
            e
        })
        .collect();
    let (r, s) = milnor_params(space).expect("checked above");
    let claim = |rule: &str, anchor: &str, v: u32, note: String| {
        with_note(entry(rule, anchor, Side::Lower, Some(v), Status::PaperClaimed), note)
    };
    let prefix = match group {
        Group::Z2 => "free involution",
        Group::Circle => "free circle action",
    };
    if let Some((t1, t2)) = best_doubling_pair(r, s) {
        trace.push(claim(
            &format!("{prefix}, doubling subfamily"),
            "n(2^t1 + 2^t2) - 1 <= TC_G,n",
            nn * ((1 << t1) + (1 << t2)) - 1,
            format!("t1={t1}, t2={t2}"),
        ));
    }
    if let Some(t) = floor_log2(r, 1) {
        trace.push(claim(
            &format!("{prefix}, power-of-two subfamily"),
            "n(2^t + s - 1) - s + 2 <= TC_G,n for r >= 2^t",
            nn * ((1 << t) + s - 1) - s + 2,
            format!("t={t}"),
        ));
    }
    trace.push(entry(
        "free action dimension",
        "TC_G,n <= n dim X - dim G + 1",
        Side::Upper,
        Some(nn * space.dimension() - group.dimension() + 1),
        Status::PaperClaimed,
    ));
    Ok(BoundReport::assemble(space, Quantity::EqTc, n, Some(group), trace))
}

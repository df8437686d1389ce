//! Generators for the explicit certificates of the Milnor-manifold and
//! projective-space constructions. Generation never checks nonzeroness;
//! pass the result to `verify_certificate`.

use std::sync::Arc;

use serde::Serialize;

use crate::algebra::Presentation;
use crate::cuplength::{Certificate, Factor, WitnessKind};
use crate::error::{Error, Result};
use crate::expr::FactorExpr;
use crate::space::{cohomology_of, SpaceDescriptor};
use crate::tensor::TensorElement;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "method", rename_all = "kebab-case")]
pub enum ConstructionId {
    Case1 { t1: u32, t2: u32 },
    Case2 { p1: u32, p2: u32 },
    R2t { s: u32, t: u32 },
    Proj { t: u32 },
    CatTopClass { space: SpaceDescriptor },
}

impl ConstructionId {
    pub fn generate(&self, n: usize) -> Result<Certificate> {
        match self {
            ConstructionId::Case1 { t1, t2 } => cert_case1(*t1, *t2, n),
            ConstructionId::Case2 { p1, p2 } => match cert_case2(*p1, *p2, n)? {
                Case2Outcome::Found(c) => Ok(c),
                Case2Outcome::NotFound { log } => Err(Error::invalid(format!(
                    "no nonzero completion found: {}",
                    log.join("; ")
                ))),
            },
            ConstructionId::R2t { s, t } => cert_r2t(*s, *t, n),
            ConstructionId::Proj { t } => cert_proj(*t, n),
            ConstructionId::CatTopClass { space } => cert_cat_topclass(space, n),
        }
    }
}

fn pow2(t: u32) -> Result<u32> {
    1u32.checked_shl(t)
        .filter(|&v| v < 1 << 30)
        .ok_or_else(|| Error::invalid(format!("exponent {t} is too large")))
}

fn need_arity(n: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::Hypothesis(format!("arity must be at least 2, got {n}")));
    }
    Ok(())
}

fn pair(name: &str, i: usize, j: usize, multiplicity: u32) -> Factor {
    Factor {
        expr: FactorExpr::pair_sum(name, i, j),
        multiplicity,
    }
}

fn finish(space: SpaceDescriptor, n: usize, factors: Vec<Factor>, expected: u32, note: String) -> Certificate {
    let c = Certificate::from_factors(space, n, WitnessKind::ZeroDivisor, factors, Some(note));
    assert_eq!(c.claimed_cup, expected, "generated factor count differs from the formula");
    c
}

/// `s = 2^t1 + 1`, `r = 2^t2`; claims cup `n(s+r-1) - 2`.
pub fn cert_case1(t1: u32, t2: u32, n: usize) -> Result<Certificate> {
    need_arity(n)?;
    let s = pow2(t1)? + 1;
    let r = pow2(t2)?;
    if s > r {
        return Err(Error::Hypothesis(format!("s = {s} exceeds r = {r}")));
    }
    let k = n / 2;
    let mut f = Vec::new();
    for i in 1..=k {
        f.push(pair("a", 2 * i - 1, 2 * i, 2 * s - 3));
        f.push(pair("b", 2 * i - 1, 2 * i, 2 * r - 1));
    }
    for i in 1..k {
        f.push(pair("a", 2 * i - 1, 2 * i + 1, 2));
    }
    if n % 2 == 1 {
        f.push(pair("a", 2 * k, 2 * k + 1, s));
        f.push(pair("b", 2 * k, 2 * k + 1, r - 1));
    }
    let expected = n as u32 * (s + r - 1) - 2;
    Ok(finish(
        SpaceDescriptor::RealMilnor { r, s },
        n,
        f,
        expected,
        format!("case1 t1={t1} t2={t2}"),
    ))
}

#[derive(Clone, Debug)]
pub enum Case2Outcome {
    Found(Certificate),
    NotFound { log: Vec<String> },
}

/// `s = 2^p1`, `r = 2^p2 + 1`. The `k - 1` squared classes are found by
/// exhaustive search, first over adjacent even-slot sums and then over all
/// slot pairs.
pub fn cert_case2(p1: u32, p2: u32, n: usize) -> Result<Case2Outcome> {
    need_arity(n)?;
    let s = pow2(p1)?;
    let r = pow2(p2)? + 1;
    if s > r {
        return Err(Error::Hypothesis(format!("s = {s} exceeds r = {r}")));
    }
    let space = SpaceDescriptor::RealMilnor { r, s };
    let pres = cohomology_of(&space)?;
    let k = n / 2;
    let mut base = Vec::new();
    for i in 1..=k {
        base.push(pair("a", 2 * i - 1, 2 * i, 2 * s - 1));
        base.push(pair("b", 2 * i - 1, 2 * i, 2 * r - 3));
    }
    if n % 2 == 1 {
        base.push(pair("a", 2 * k, 2 * k + 1, s));
        base.push(pair("b", 2 * k, 2 * k + 1, r - 1));
    }
    let expected = n as u32 * (s + r - 1) - 2;
    let note = format!("case2 p1={p1} p2={p2}");
    if k <= 1 {
        return Ok(Case2Outcome::Found(finish(space, n, base, expected, note)));
    }

    let mut product = TensorElement::unit(&pres, n)?;
    for f in &base {
        product = product.multiply(&f.expr.evaluate(&pres, n)?.power(f.multiplicity))?;
    }
    let mut log = Vec::new();
    if product.is_zero() {
        log.push("base product already vanishes".to_string());
        return Ok(Case2Outcome::NotFound { log });
    }

    let narrow: Vec<FactorExpr> = ["a", "b"]
        .iter()
        .flat_map(|g| (1..k).map(move |i| FactorExpr::pair_sum(g, 2 * i, 2 * i + 2)))
        .collect();
    let wide: Vec<FactorExpr> = ["a", "b"]
        .iter()
        .flat_map(|g| (1..=n).flat_map(move |i| (i + 1..=n).map(move |j| FactorExpr::pair_sum(g, i, j))))
        .collect();
    for (label, pool) in [("adjacent even slots", narrow), ("all slot pairs", wide)] {
        let squares = pool
            .iter()
            .map(|e| Ok(e.evaluate(&pres, n)?.power(2)))
            .collect::<Result<Vec<_>>>()?;
        let mut tried = 0usize;
        let mut chosen = Vec::new();
        if search_squares(&squares, &product, k - 1, 0, &mut chosen, &mut tried) {
            let mut factors = base.clone();
            for &idx in &chosen {
                match factors.iter_mut().find(|f| f.expr == pool[idx]) {
                    Some(f) => f.multiplicity += 2,
                    None => factors.push(Factor {
                        expr: pool[idx].clone(),
                        multiplicity: 2,
                    }),
                }
            }
            let note = format!("{note}; squares from {label}");
            return Ok(Case2Outcome::Found(finish(space, n, factors, expected, note)));
        }
        log.push(format!("{label}: {tried} combinations, none nonzero"));
    }
    Ok(Case2Outcome::NotFound { log })
}

fn search_squares(
    squares: &[TensorElement],
    acc: &TensorElement,
    remaining: usize,
    from: usize,
    chosen: &mut Vec<usize>,
    tried: &mut usize,
) -> bool {
    if remaining == 0 {
        *tried += 1;
        return true;
    }
    for j in from..squares.len() {
        let next = acc.multiply(&squares[j]).expect("same presentation");
        if next.is_zero() {
            *tried += 1;
            continue;
        }
        chosen.push(j);
        if search_squares(squares, &next, remaining - 1, j, chosen, tried) {
            return true;
        }
        chosen.pop();
    }
    false
}

/// `r = 2^t`, `1 <= s <= r`; claims cup `n(r+s-1) - s + 1`.
pub fn cert_r2t(s: u32, t: u32, n: usize) -> Result<Certificate> {
    need_arity(n)?;
    let r = pow2(t)?;
    if s == 0 {
        return Err(Error::Hypothesis("the construction needs s >= 1".into()));
    }
    if s > r {
        return Err(Error::Hypothesis(format!("s = {s} exceeds r = {r}")));
    }
    let k = n / 2;
    let mut f = Vec::new();
    for i in 1..=k {
        f.push(pair("a", 2 * i - 1, 2 * i, s));
        f.push(pair("b", 2 * i - 1, 2 * i, 2 * r - 1));
    }
    for i in 1..k {
        f.push(pair("a", 2 * i, 2 * i + 2, s - 1));
    }
    if n % 2 == 1 {
        f.push(pair("a", 2 * k, 2 * k + 1, s));
        f.push(pair("b", 2 * k, 2 * k + 1, r - 1));
    }
    let expected = n as u32 * (r + s - 1) - s + 1;
    Ok(finish(
        SpaceDescriptor::RealMilnor { r, s },
        n,
        f,
        expected,
        format!("r2t s={s} t={t}"),
    ))
}

/// `m = 2^t`; claims cup `n 2^t - 1`.
pub fn cert_proj(t: u32, n: usize) -> Result<Certificate> {
    need_arity(n)?;
    let m = pow2(t)?;
    let k = n / 2;
    let mut f = Vec::new();
    for i in 1..=k {
        f.push(pair("x", 2 * i - 1, 2 * i, 2 * m - 1));
    }
    for j in 1..k {
        f.push(pair("x", 2 * j, 2 * j + 2, 1));
    }
    if n % 2 == 1 {
        f.push(pair("x", 2 * k, 2 * k + 1, m));
    }
    let expected = n as u32 * m - 1;
    Ok(finish(SpaceDescriptor::RealProj(m), n, f, expected, format!("proj t={t}")))
}

/// Product of the top classes of all `n` slots, as a cup-length witness.
pub fn top_class_witness(space: &SpaceDescriptor, n: usize) -> Result<Certificate> {
    if n == 0 {
        return Err(Error::Hypothesis("arity must be at least 1".into()));
    }
    let pres = cohomology_of(space)?;
    Ok(top_class_in(space, &pres, n))
}

pub(crate) fn top_class_in(space: &SpaceDescriptor, pres: &Arc<Presentation>, n: usize) -> Certificate {
    let top = &pres.basis()[pres.top_rank()];
    let mut f = Vec::new();
    for i in 1..=n {
        for (g, &e) in pres.generators().iter().zip(top.exponents()) {
            if e > 0 {
                f.push(Factor {
                    expr: FactorExpr::gen(&g.name, i),
                    multiplicity: e,
                });
            }
        }
    }
    Certificate::from_factors(space.clone(), n, WitnessKind::CupLength, f, Some("top class".into()))
}

/// `prod_i a_i^s b_i^(r-1)` on a Milnor manifold.
pub fn cert_cat_topclass(space: &SpaceDescriptor, n: usize) -> Result<Certificate> {
    match space {
        SpaceDescriptor::RealMilnor { .. } | SpaceDescriptor::ComplexMilnor { .. } => top_class_witness(space, n),
        other => Err(Error::invalid(format!("`{other}` is not a Milnor manifold"))),
    }
}

/// The same factors, claimed for another space.
pub fn retarget(c: &Certificate, space: SpaceDescriptor) -> Certificate {
    Certificate { space, ..c.clone() }
}

//! Zero-divisor cup-length: certificates, their verification, an exact
//! oracle via powers of the diagonal kernel ideal, and heuristic search.

use std::collections::HashMap;
use std::sync::Arc;

use serde::Serialize;

use crate::algebra::{Monomial, Presentation};
use crate::bits::{BitRow, EchelonBasis};
use crate::error::{Error, Result};
use crate::expr::FactorExpr;
use crate::par::{self, Exec};
use crate::space::{cohomology_of, SpaceDescriptor};
use crate::tensor::{
    cancel_mod2, encode, mul_monomials, slice_kernel, tensor_dimension, Slice, TensorElement, DEFAULT_MAX_SLICE,
};

/// What a certificate's product witnesses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum WitnessKind {
    /// Every factor lies in the kernel of the diagonal; bounds `TC_n`.
    ZeroDivisor,
    /// Every factor has positive degree; bounds the category of `X^n`.
    CupLength,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factor {
    pub expr: FactorExpr,
    pub multiplicity: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub space: SpaceDescriptor,
    pub n: usize,
    pub witness: WitnessKind,
    pub factors: Vec<Factor>,
    pub claimed_cup: u32,
    pub claimed_tc_lower: u32,
    pub provenance: Option<String>,
}

impl Certificate {
    /// Builds a certificate whose claim is its own factor count.
    pub fn from_factors(
        space: SpaceDescriptor,
        n: usize,
        witness: WitnessKind,
        factors: Vec<Factor>,
        provenance: Option<String>,
    ) -> Certificate {
        let factors: Vec<Factor> = factors.into_iter().filter(|f| f.multiplicity > 0).collect();
        let count = factors.iter().map(|f| f.multiplicity).sum();
        Certificate {
            space,
            n,
            witness,
            factors,
            claimed_cup: count,
            claimed_tc_lower: count + 1,
            provenance,
        }
    }

    pub fn factor_count(&self) -> u32 {
        self.factors.iter().map(|f| f.multiplicity).sum()
    }

    /// Checks the structural invariants of a certificate.
    pub fn check_invariants(&self) -> Result<()> {
        if self.claimed_tc_lower != self.claimed_cup + 1 {
            return Err(Error::Schema(format!(
                "claimedTcLower {} must equal claimedCup + 1 = {}",
                self.claimed_tc_lower,
                self.claimed_cup + 1
            )));
        }
        if self.factor_count() != self.claimed_cup {
            return Err(Error::Schema(format!(
                "factor count {} differs from claimedCup {}",
                self.factor_count(),
                self.claimed_cup
            )));
        }
        if self.n == 0 {
            return Err(Error::Schema("arity must be at least 1".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    Verified,
    FactorNotZeroDivisor,
    /// A cup-length witness contains a factor with a degree-zero part.
    FactorInDegreeZero,
    ProductVanishes,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct FactorCheck {
    pub expression: String,
    pub multiplicity: u32,
    pub is_zero_divisor: bool,
    pub degree: Option<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct VerificationReport {
    pub space: String,
    pub n: usize,
    pub witness: WitnessKind,
    pub per_factor: Vec<FactorCheck>,
    pub product_nonzero: bool,
    pub product_terms: usize,
    pub verified_cup: Option<u32>,
    pub verdict: Verdict,
}

impl VerificationReport {
    pub fn is_verified(&self) -> bool {
        self.verdict == Verdict::Verified
    }

    /// `verifiedCup + 1` when verified.
    pub fn verified_lower_bound(&self) -> Option<u32> {
        self.verified_cup.map(|c| c + 1)
    }
}

/// True iff `u` maps to zero under the diagonal.
pub fn is_zero_divisor(u: &TensorElement) -> bool {
    u.diagonal_eval().is_zero()
}

/// Checks every factor and multiplies them out. Claimed values are never consulted.
pub fn verify_certificate(c: &Certificate) -> Result<VerificationReport> {
    let pres = cohomology_of(&c.space)?;
    verify_in(c, &pres)
}

pub(crate) fn verify_in(c: &Certificate, pres: &Arc<Presentation>) -> Result<VerificationReport> {
    let mut per_factor = Vec::with_capacity(c.factors.len());
    let mut product = TensorElement::unit(pres, c.n)?;
    let mut admissible = true;
    for f in &c.factors {
        let expr = f.expr.resolve(c.n, pres)?;
        let value = expr.evaluate(pres, c.n)?;
        let zd = is_zero_divisor(&value);
        let ok = match c.witness {
            WitnessKind::ZeroDivisor => zd,
            WitnessKind::CupLength => value.in_positive_degrees() && !value.is_zero(),
        };
        admissible &= ok;
        per_factor.push(FactorCheck {
            expression: expr.to_string(),
            multiplicity: f.multiplicity,
            is_zero_divisor: zd,
            degree: value.degree(),
        });
        if !product.is_zero() {
            product = product.multiply(&value.power(f.multiplicity))?;
        }
    }
    let product_nonzero = !product.is_zero();
    let verdict = if !admissible {
        match c.witness {
            WitnessKind::ZeroDivisor => Verdict::FactorNotZeroDivisor,
            WitnessKind::CupLength => Verdict::FactorInDegreeZero,
        }
    } else if !product_nonzero {
        Verdict::ProductVanishes
    } else {
        Verdict::Verified
    };
    let count = c.factor_count();
    Ok(VerificationReport {
        space: c.space.to_string(),
        n: c.n,
        witness: c.witness,
        per_factor,
        product_nonzero,
        product_terms: product.support().len(),
        verified_cup: (verdict == Verdict::Verified).then_some(count),
        verdict,
    })
}

#[derive(Clone, Copy, Debug)]
pub struct OracleConfig {
    pub max_slice: usize,
    /// Cap on the total dimension `N^n` of the tensor power.
    pub max_total: u128,
    pub exec: Exec,
    /// Stop spanning a degree of `K^(m+1)` once it reaches the dimension of
    /// `K^m` there. Sound because `K^(m+1)` is contained in `K^m`.
    pub saturation_shortcut: bool,
}

pub const DEFAULT_MAX_TOTAL: u128 = 1 << 16;

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            max_slice: DEFAULT_MAX_SLICE,
            max_total: DEFAULT_MAX_TOTAL,
            exec: Exec::default(),
            saturation_shortcut: true,
        }
    }
}

/// The chain `K ⊇ K^2 ⊇ ...` of powers of the diagonal kernel ideal,
/// stored per degree as echelon bases in slice coordinates.
pub struct IdealPowers {
    pub base: Arc<Presentation>,
    pub arity: usize,
    pub slices: Vec<Slice>,
    /// `powers[m - 1][d]` spans the degree-`d` part of `K^m`.
    pub powers: Vec<Vec<EchelonBasis>>,
}

impl IdealPowers {
    /// Largest `m` with `K^m != 0`.
    pub fn cup_length(&self) -> u32 {
        self.powers
            .iter()
            .take_while(|p| p.iter().any(|b| b.rank() > 0))
            .count() as u32
    }

    /// `dims[m - 1][d] = dim K^m_d`.
    pub fn dimensions(&self) -> Vec<Vec<usize>> {
        self.powers
            .iter()
            .map(|p| p.iter().map(|b| b.rank()).collect())
            .collect()
    }

    pub fn element(&self, degree: u32, row: &BitRow) -> Result<TensorElement> {
        let slice = &self.slices[degree as usize];
        TensorElement::from_monomials(&self.base, self.arity, row.ones().map(|i| slice.monomials[i]))
    }
}

fn to_ranks(slice: &Slice, row: &BitRow) -> Vec<u64> {
    row.ones().map(|i| slice.monomials[i]).collect()
}

/// `g_1 + g_j` for every nonzero generator `g` and slot `j >= 2`, with degrees.
/// These generate the diagonal kernel as an ideal.
fn ideal_generators(base: &Presentation, arity: usize) -> Vec<(u32, Vec<u64>)> {
    let len = base.basis_len();
    let mut out = Vec::new();
    for (gi, g) in base.generators().iter().enumerate() {
        let mut exps = vec![0; base.generators().len()];
        exps[gi] = 1;
        let Some(rank) = base.rank_of(&Monomial(exps)) else { continue };
        for j in 2..=arity {
            let mut first = vec![0; arity];
            first[0] = rank;
            let mut other = vec![0; arity];
            other[j - 1] = rank;
            out.push((g.degree, vec![encode(len, &first), encode(len, &other)]));
        }
    }
    out
}

/// Computes every power of the kernel ideal until it vanishes.
pub fn ideal_powers(base: &Arc<Presentation>, arity: usize, cfg: &OracleConfig) -> Result<IdealPowers> {
    let total = tensor_dimension(base, arity);
    if total > cfg.max_total {
        return Err(Error::ResourceLimit {
            what: format!("{arity}-fold tensor power"),
            dimension: total,
            cap: cfg.max_total,
        });
    }
    let top = arity as u32 * base.top_degree();
    let degrees: Vec<u32> = (0..=top).collect();
    let kernels = par::map(cfg.exec, &degrees, |&d| slice_kernel(base, arity, d, cfg.max_slice))
        .into_iter()
        .collect::<Result<Vec<_>>>()?;

    let nullities: Vec<usize> = kernels.iter().map(|k| k.vectors.len()).collect();
    let slices: Vec<Slice> = kernels.into_iter().map(|k| k.slice).collect();
    let generators = ideal_generators(base, arity);

    let span = |d: usize, others: &[Vec<Vec<u64>>], ceiling: usize| {
        let slice = &slices[d];
        let mut basis = EchelonBasis::new(slice.len());
        if cfg.saturation_shortcut && ceiling == 0 {
            return basis;
        }
        let mut terms = Vec::new();
        for (deg, g) in &generators {
            let Some(e) = d.checked_sub(*deg as usize) else { continue };
            for x in &others[e] {
                terms.clear();
                for &u in g {
                    for &v in x {
                        mul_monomials(base, arity, u, v, &mut terms);
                    }
                }
                let product = cancel_mod2(std::mem::take(&mut terms));
                if product.is_empty() {
                    continue;
                }
                let row = BitRow::from_indices(
                    slice.len(),
                    product.iter().map(|&m| slice.index_of(m).expect("degree-homogeneous product")),
                );
                basis.insert(row);
                if cfg.saturation_shortcut && basis.rank() == ceiling {
                    return basis;
                }
            }
        }
        basis
    };

    let monomials: Vec<Vec<Vec<u64>>> = slices.iter().map(|s| s.monomials.iter().map(|&m| vec![m]).collect()).collect();
    let first = par::map(cfg.exec, &degrees, |&d| span(d as usize, &monomials, nullities[d as usize]));
    for (d, b) in first.iter().enumerate() {
        assert_eq!(
            b.rank(),
            nullities[d],
            "ideal generated by g_1 + g_j differs from the diagonal kernel in degree {d}"
        );
    }
    drop(monomials);

    let mut powers = vec![first];
    loop {
        let cur = powers.last().expect("nonempty");
        if cur.iter().all(|b| b.rank() == 0) {
            break;
        }
        let cur_elems: Vec<Vec<Vec<u64>>> = cur
            .iter()
            .zip(&slices)
            .map(|(b, s)| b.rows().iter().map(|r| to_ranks(s, r)).collect())
            .collect();
        let next = par::map(cfg.exec, &degrees, |&d| span(d as usize, &cur_elems, cur[d as usize].rank()));
        powers.push(next);
    }
    let result = IdealPowers {
        base: Arc::clone(base),
        arity,
        slices,
        powers,
    };
    let totals: Vec<usize> = result.dimensions().iter().map(|p| p.iter().sum()).collect();
    assert!(
        totals.windows(2).all(|w| w[1] < w[0] || w[0] == 0),
        "ideal power chain must strictly decrease: {totals:?}"
    );
    let bound = top / base.min_generator_degree();
    assert!(
        result.cup_length() <= bound,
        "cup-length {} exceeds the degree bound {bound}",
        result.cup_length()
    );
    Ok(result)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CupExact {
    pub value: u32,
    pub tensor_dimension: u128,
    /// Total dimension of `K^m` for `m = 1, 2, ...` (last entry is 0).
    pub chain: Vec<usize>,
}

/// Exact mod-2 zero-divisor cup-length of the `arity`-fold power.
pub fn cup_exact(base: &Arc<Presentation>, arity: usize, cfg: &OracleConfig) -> Result<CupExact> {
    let powers = ideal_powers(base, arity, cfg)?;
    Ok(CupExact {
        value: powers.cup_length(),
        tensor_dimension: tensor_dimension(base, arity),
        chain: powers.dimensions().iter().map(|p| p.iter().sum()).collect(),
    })
}

/// One move in a search: multiply by `expr` raised to `multiplicity`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PoolItem {
    pub expr: FactorExpr,
    pub multiplicity: u32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SearchStrategy {
    Exhaustive { node_budget: usize },
    Beam { width: usize },
}

impl Default for SearchStrategy {
    fn default() -> Self {
        SearchStrategy::Beam { width: 32 }
    }
}

#[derive(Clone, Debug)]
pub struct SearchOutcome {
    pub certificate: Certificate,
    pub explored: usize,
    /// False when an exhaustive search ran out of budget.
    pub complete: bool,
}

/// Default pool: `g_i + g_j` for every generator and slot pair `i < j`,
/// as single steps and as steps of multiplicity `2^k - 1`.
pub fn default_pool(base: &Presentation, arity: usize) -> Vec<PoolItem> {
    let max_step = 2 * base.top_degree().max(1);
    let mut steps = vec![1u32];
    let mut e = 3u32;
    while e <= max_step {
        steps.push(e);
        e = 2 * e + 1;
    }
    let mut pool = Vec::new();
    for g in base.generators() {
        for i in 1..=arity {
            for j in i + 1..=arity {
                for &m in &steps {
                    pool.push(PoolItem {
                        expr: FactorExpr::pair_sum(&g.name, i, j),
                        multiplicity: m,
                    });
                }
            }
        }
    }
    pool
}

#[derive(Clone)]
struct SearchState {
    counts: Vec<u32>,
    product: TensorElement,
    length: u32,
    degree: u32,
    key: String,
}

fn state_key(pool: &[PoolItem], counts: &[u32]) -> String {
    let mut merged: Vec<(String, u32)> = Vec::new();
    for (item, &c) in pool.iter().zip(counts) {
        if c == 0 {
            continue;
        }
        let name = item.expr.to_string();
        match merged.iter_mut().find(|(n, _)| *n == name) {
            Some(entry) => entry.1 += c * item.multiplicity,
            None => merged.push((name, c * item.multiplicity)),
        }
    }
    merged.sort();
    merged
        .iter()
        .map(|(n, m)| format!("({n})^{m}"))
        .collect::<Vec<_>>()
        .join("*")
}

fn state_factors(pool: &[PoolItem], counts: &[u32]) -> Vec<Factor> {
    let mut factors: Vec<Factor> = Vec::new();
    for (item, &c) in pool.iter().zip(counts) {
        if c == 0 {
            continue;
        }
        match factors.iter_mut().find(|f| f.expr == item.expr) {
            Some(f) => f.multiplicity += c * item.multiplicity,
            None => factors.push(Factor {
                expr: item.expr.clone(),
                multiplicity: c * item.multiplicity,
            }),
        }
    }
    factors
}

/// Searches products of pool elements for a long nonzero product. The
/// result is a lower bound only.
pub fn cup_search(
    space: &SpaceDescriptor,
    arity: usize,
    pool: &[PoolItem],
    strategy: SearchStrategy,
) -> Result<SearchOutcome> {
    let pres = cohomology_of(space)?;
    cup_search_in(space, &pres, arity, pool, strategy)
}

pub(crate) fn cup_search_in(
    space: &SpaceDescriptor,
    pres: &Arc<Presentation>,
    arity: usize,
    pool: &[PoolItem],
    strategy: SearchStrategy,
) -> Result<SearchOutcome> {
    let mut values = Vec::with_capacity(pool.len());
    let mut degrees = Vec::with_capacity(pool.len());
    for item in pool {
        let expr = item.expr.resolve(arity, pres)?;
        let v = expr.evaluate(pres, arity)?;
        if !is_zero_divisor(&v) {
            return Err(Error::invalid(format!("pool element `{expr}` is not a zero divisor")));
        }
        if v.is_zero() {
            return Err(Error::invalid(format!("pool element `{expr}` is zero")));
        }
        let step = v.power(item.multiplicity);
        let deg = v
            .support()
            .iter()
            .map(|&m| crate::tensor::monomial_degree(pres, arity, m))
            .min()
            .unwrap_or(0);
        values.push(step);
        degrees.push(deg * item.multiplicity);
    }
    let start = SearchState {
        counts: vec![0; pool.len()],
        product: TensorElement::unit(pres, arity)?,
        length: 0,
        degree: 0,
        key: String::new(),
    };
    let better = |a: &SearchState, b: &SearchState| {
        (b.length, std::cmp::Reverse(b.degree), std::cmp::Reverse(&b.key))
            .cmp(&(a.length, std::cmp::Reverse(a.degree), std::cmp::Reverse(&a.key)))
            .is_gt()
    };
    let mut best = start.clone();
    let mut explored = 0usize;
    let mut complete = true;

    match strategy {
        SearchStrategy::Exhaustive { node_budget } => {
            let mut stack = vec![(start, 0usize)];
            while let Some((state, from)) = stack.pop() {
                explored += 1;
                if better(&best, &state) {
                    best = state.clone();
                }
                if explored >= node_budget {
                    complete = false;
                    break;
                }
                for j in from..pool.len() {
                    let product = state.product.multiply(&values[j])?;
                    if product.is_zero() {
                        continue;
                    }
                    let mut counts = state.counts.clone();
                    counts[j] += 1;
                    let key = state_key(pool, &counts);
                    stack.push((
                        SearchState {
                            counts,
                            product,
                            length: state.length + pool[j].multiplicity,
                            degree: state.degree + degrees[j],
                            key,
                        },
                        j,
                    ));
                }
            }
        }
        SearchStrategy::Beam { width } => {
            let mut beam = vec![start];
            while !beam.is_empty() {
                let mut candidates: HashMap<Vec<u32>, SearchState> = HashMap::new();
                for state in &beam {
                    for j in 0..pool.len() {
                        let mut counts = state.counts.clone();
                        counts[j] += 1;
                        if candidates.contains_key(&counts) {
                            continue;
                        }
                        explored += 1;
                        let product = state.product.multiply(&values[j])?;
                        if product.is_zero() {
                            continue;
                        }
                        let key = state_key(pool, &counts);
                        candidates.insert(
                            counts.clone(),
                            SearchState {
                                counts,
                                product,
                                length: state.length + pool[j].multiplicity,
                                degree: state.degree + degrees[j],
                                key,
                            },
                        );
                    }
                }
                let mut next: Vec<SearchState> = candidates.into_values().collect();
                next.sort_by(|a, b| {
                    b.length
                        .cmp(&a.length)
                        .then(a.degree.cmp(&b.degree))
                        .then_with(|| a.key.cmp(&b.key))
                });
                next.truncate(width.max(1));
                for s in &next {
                    if better(&best, s) {
                        best = s.clone();
                    }
                }
                beam = next;
            }
        }
    }

    let certificate = Certificate::from_factors(
        space.clone(),
        arity,
        WitnessKind::ZeroDivisor,
        state_factors(pool, &best.counts),
        Some(match strategy {
            SearchStrategy::Exhaustive { .. } => "exhaustive search".to_string(),
            SearchStrategy::Beam { width } => format!("beam search, width {width}"),
        }),
    );
    Ok(SearchOutcome {
        certificate,
        explored,
        complete,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{make_presentation, PresentationSpec};

    fn rp(m: u32) -> Arc<Presentation> {
        make_presentation(&PresentationSpec::truncated(m)).unwrap()
    }

    fn te(p: &Arc<Presentation>, n: usize, text: &str) -> TensorElement {
        FactorExpr::parse(text).unwrap().evaluate(p, n).unwrap()
    }

    fn cert(space: &str, n: usize, factors: &[(&str, u32)]) -> Certificate {
        Certificate::from_factors(
            space.parse().unwrap(),
            n,
            WitnessKind::ZeroDivisor,
            factors
                .iter()
                .map(|(e, m)| Factor {
                    expr: FactorExpr::parse(e).unwrap(),
                    multiplicity: *m,
                })
                .collect(),
            None,
        )
    }

    #[test]
    fn zero_divisor_examples() {
        let p = make_presentation(&PresentationSpec::milnor(1, 2)).unwrap();
        assert!(is_zero_divisor(&te(&p, 2, "a1+a2")));
        assert!(is_zero_divisor(&te(&p, 2, "a1*b2+b1*a2")));
        assert!(!is_zero_divisor(&te(&p, 2, "a1")));
    }

    #[test]
    fn oracle_small_cases() {
        let cfg = OracleConfig::default();
        assert_eq!(cup_exact(&rp(1), 2, &cfg).unwrap().value, 1);
        assert_eq!(cup_exact(&rp(1), 3, &cfg).unwrap().value, 2);
        assert_eq!(cup_exact(&rp(2), 2, &cfg).unwrap().value, 3);
    }

    #[test]
    fn oracle_respects_total_cap() {
        let cfg = OracleConfig {
            max_total: 10,
            ..OracleConfig::default()
        };
        assert!(cup_exact(&rp(2), 3, &cfg).unwrap_err().is_resource_limit());
    }

    #[test]
    fn sequential_and_parallel_oracles_agree() {
        let p = make_presentation(&PresentationSpec::milnor(1, 2)).unwrap();
        let seq = OracleConfig {
            exec: Exec::Sequential,
            ..OracleConfig::default()
        };
        let par = OracleConfig {
            exec: Exec::Parallel,
            ..OracleConfig::default()
        };
        assert_eq!(cup_exact(&p, 3, &seq).unwrap(), cup_exact(&p, 3, &par).unwrap());
    }

    #[test]
    fn verify_rp2_certificates() {
        let r = verify_certificate(&cert("rp:2", 2, &[("x1+x2", 3)])).unwrap();
        assert_eq!(r.verdict, Verdict::Verified);
        assert_eq!(r.verified_cup, Some(3));
        assert_eq!(r.verified_lower_bound(), Some(4));
        let r = verify_certificate(&cert("rp:2", 3, &[("x1+x2", 3), ("x2+x3", 2)])).unwrap();
        assert_eq!(r.verdict, Verdict::Verified);
        assert_eq!(r.verified_cup, Some(5));
    }

    #[test]
    fn verify_reports_failures() {
        let r = verify_certificate(&cert("rp:2", 2, &[("x1", 1)])).unwrap();
        assert_eq!(r.verdict, Verdict::FactorNotZeroDivisor);
        assert_eq!(r.verified_cup, None);
        let r = verify_certificate(&cert("rp:2", 2, &[("x1+x2", 4)])).unwrap();
        assert_eq!(r.verdict, Verdict::ProductVanishes);
        let r = verify_certificate(&cert("rh:2,1", 2, &[("a1+a2", 1), ("b1+b2", 3)])).unwrap();
        assert_eq!(r.verdict, Verdict::ProductVanishes);
        assert!(verify_certificate(&cert("rp:2", 2, &[("x3", 1)])).is_err());
    }

    #[test]
    fn search_examples() {
        let rp2: SpaceDescriptor = "rp:2".parse().unwrap();
        let pool = vec![PoolItem {
            expr: FactorExpr::parse("x1+x2").unwrap(),
            multiplicity: 1,
        }];
        for strategy in [SearchStrategy::Exhaustive { node_budget: 10_000 }, SearchStrategy::default()] {
            let out = cup_search(&rp2, 2, &pool, strategy).unwrap();
            assert_eq!(out.certificate.claimed_cup, 3);
        }
        let rp1: SpaceDescriptor = "rp:1".parse().unwrap();
        let pool: Vec<PoolItem> = ["x1+x2", "x2+x3", "x1+x3"]
            .iter()
            .map(|e| PoolItem {
                expr: FactorExpr::parse(e).unwrap(),
                multiplicity: 1,
            })
            .collect();
        let out = cup_search(&rp1, 3, &pool, SearchStrategy::Exhaustive { node_budget: 10_000 }).unwrap();
        assert_eq!(out.certificate.claimed_cup, 2);
        assert!(verify_certificate(&out.certificate).unwrap().is_verified());
        let empty = cup_search(&rp1, 3, &[], SearchStrategy::default()).unwrap();
        assert_eq!(empty.certificate.claimed_cup, 0);
        assert!(empty.certificate.factors.is_empty());
    }

    #[test]
    fn search_rejects_non_zero_divisors() {
        let rp2: SpaceDescriptor = "rp:2".parse().unwrap();
        let pool = vec![PoolItem {
            expr: FactorExpr::parse("x1").unwrap(),
            multiplicity: 1,
        }];
        assert!(cup_search(&rp2, 2, &pool, SearchStrategy::default()).is_err());
    }

    #[test]
    fn certificate_invariants() {
        let mut c = cert("rp:2", 2, &[("x1+x2", 3)]);
        assert!(c.check_invariants().is_ok());
        c.claimed_tc_lower = 3;
        assert!(c.check_invariants().is_err());
    }
}

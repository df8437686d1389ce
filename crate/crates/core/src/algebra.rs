//! Finite-dimensional graded-commutative algebras over the two-element field.
//!
//! Three presentation kinds are supported:
//!
//! * `Milnor { s, r }`: `F2[a, b] / (a^(s+1), b^r + a b^(r-1) + ... + a^s b^(r-s))`
//!   with basis `{a^i b^j : i <= s, j < r}`;
//! * `Truncated { m }`: `F2[x] / (x^(m+1))`;
//! * `Product`: the tensor product of other presentations.
//!
//! Every presentation enumerates its monomial basis once, sorted by degree
//! and then lexicographically on exponent vectors, so a degree slice is a
//! contiguous run of basis ranks. Elements are dense bit rows over that
//! basis.

use std::borrow::Cow;
use std::collections::BTreeSet;
use std::fmt;
use std::ops::Range;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::bits::BitRow;
use crate::error::{Error, Result};

/// Basis size above which products are reduced on demand instead of tabulated.
const TABLE_LIMIT: usize = 1024;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PresentationSpec {
    Milnor { s: u32, r: u32, gen_degree: u32 },
    Truncated { m: u32, gen_degree: u32 },
    Product { factors: Vec<PresentationSpec> },
}

impl PresentationSpec {
    pub fn milnor(s: u32, r: u32) -> Self {
        PresentationSpec::Milnor { s, r, gen_degree: 1 }
    }

    pub fn truncated(m: u32) -> Self {
        PresentationSpec::Truncated { m, gen_degree: 1 }
    }

    fn flattened_factors(&self, out: &mut Vec<PresentationSpec>) {
        match self {
            PresentationSpec::Product { factors } => {
                for f in factors {
                    f.flattened_factors(out);
                }
            }
            other => out.push(other.clone()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    pub degree: u32,
}

/// Exponent vector, one entry per generator.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn exponents(&self) -> &[u32] {
        &self.0
    }
}

#[derive(Debug)]
enum Kind {
    Milnor {
        s: u32,
        r: u32,
        /// `rank_grid[i * r + j]` is the rank of `a^i b^j`.
        rank_grid: Vec<u32>,
    },
    Truncated {
        m: u32,
    },
    Product {
        factors: Vec<Arc<Presentation>>,
        /// Global rank of each tuple of factor ranks (mixed radix, first factor most significant).
        tuple_to_rank: Vec<u32>,
        rank_to_tuple: Vec<Vec<u32>>,
    },
}

/// Sparse multiplication table in compressed-row form.
#[derive(Debug)]
struct ProductTable {
    offsets: Vec<u32>,
    data: Vec<u32>,
}

#[derive(Debug)]
pub struct Presentation {
    spec: PresentationSpec,
    kind: Kind,
    generators: Vec<Generator>,
    basis: Vec<Monomial>,
    degrees: Vec<u32>,
    /// `slice_start[d]..slice_start[d + 1]` are the ranks of degree `d`.
    slice_start: Vec<usize>,
    top_degree: u32,
    table: Option<ProductTable>,
}

impl PartialEq for Presentation {
    fn eq(&self, other: &Self) -> bool {
        self.spec == other.spec
    }
}

impl Eq for Presentation {}

/// Validates `spec` and enumerates its basis.
pub fn make_presentation(spec: &PresentationSpec) -> Result<Arc<Presentation>> {
    Presentation::new(spec).map(Arc::new)
}

fn check_gen_degree(g: u32) -> Result<()> {
    if g == 1 || g == 2 {
        Ok(())
    } else {
        Err(Error::invalid(format!("generator degree must be 1 or 2, got {g}")))
    }
}

impl Presentation {
    pub fn new(spec: &PresentationSpec) -> Result<Presentation> {
        match *spec {
            PresentationSpec::Milnor { s, r, gen_degree } => Self::milnor(s, r, gen_degree),
            PresentationSpec::Truncated { m, gen_degree } => Self::truncated(m, gen_degree),
            PresentationSpec::Product { .. } => {
                let mut flat = Vec::new();
                spec.flattened_factors(&mut flat);
                if flat.is_empty() {
                    return Err(Error::invalid("product presentation needs at least one factor"));
                }
                let factors = flat
                    .iter()
                    .map(|f| Presentation::new(f).map(Arc::new))
                    .collect::<Result<Vec<_>>>()?;
                Self::product(factors)
            }
        }
    }

    fn milnor(s: u32, r: u32, g: u32) -> Result<Presentation> {
        check_gen_degree(g)?;
        if s > r {
            return Err(Error::invalid(format!("Milnor presentation needs s <= r, got s={s}, r={r}")));
        }
        if r == 0 {
            return Err(Error::invalid("Milnor presentation needs r >= 1 (r = 0 is the zero ring)"));
        }
        let mut basis = Vec::with_capacity(((s + 1) * r) as usize);
        for i in 0..=s {
            for j in 0..r {
                basis.push(Monomial(vec![i, j]));
            }
        }
        let generators = vec![
            Generator { name: "a".into(), degree: g },
            Generator { name: "b".into(), degree: g },
        ];
        let mut p = Self::assemble(spec_milnor(s, r, g), Kind::Truncated { m: 0 }, generators, basis);
        let mut rank_grid = vec![0u32; ((s + 1) * r) as usize];
        for (rank, mono) in p.basis.iter().enumerate() {
            let (i, j) = (mono.0[0], mono.0[1]);
            rank_grid[(i * r + j) as usize] = rank as u32;
        }
        p.kind = Kind::Milnor { s, r, rank_grid };
        p.build_table();
        Ok(p)
    }

    fn truncated(m: u32, g: u32) -> Result<Presentation> {
        check_gen_degree(g)?;
        let basis = (0..=m).map(|i| Monomial(vec![i])).collect();
        let generators = vec![Generator { name: "x".into(), degree: g }];
        let mut p = Self::assemble(
            PresentationSpec::Truncated { m, gen_degree: g },
            Kind::Truncated { m },
            generators,
            basis,
        );
        p.build_table();
        Ok(p)
    }

    fn product(factors: Vec<Arc<Presentation>>) -> Result<Presentation> {
        let sizes: Vec<usize> = factors.iter().map(|f| f.basis_len()).collect();
        let total: usize = sizes.iter().product();
        let mut generators = Vec::new();
        for (fi, f) in factors.iter().enumerate() {
            for g in &f.generators {
                generators.push(Generator {
                    name: format!("{}.{}", g.name, fi + 1),
                    degree: g.degree,
                });
            }
        }
        let mut tuples: Vec<Vec<u32>> = Vec::with_capacity(total);
        for idx in 0..total {
            let mut rest = idx;
            let mut tuple = vec![0u32; factors.len()];
            for k in (0..factors.len()).rev() {
                tuple[k] = (rest % sizes[k]) as u32;
                rest /= sizes[k];
            }
            tuples.push(tuple);
        }
        let monomial_of = |tuple: &[u32]| {
            let mut exps = Vec::new();
            for (f, &rank) in factors.iter().zip(tuple) {
                exps.extend_from_slice(&f.basis[rank as usize].0);
            }
            Monomial(exps)
        };
        let basis: Vec<Monomial> = tuples.iter().map(|t| monomial_of(t)).collect();
        let spec = PresentationSpec::Product {
            factors: factors.iter().map(|f| f.spec.clone()).collect(),
        };
        let mut p = Self::assemble(spec, Kind::Truncated { m: 0 }, generators, basis);
        // `assemble` sorted the basis; recover each rank's factor tuple.
        let mut tuple_to_rank = vec![0u32; total];
        let mut rank_to_tuple = vec![Vec::new(); total];
        let lookup: std::collections::HashMap<&Monomial, usize> =
            p.basis.iter().enumerate().map(|(r, m)| (m, r)).collect();
        for (idx, tuple) in tuples.into_iter().enumerate() {
            let rank = lookup[&monomial_of(&tuple)];
            tuple_to_rank[idx] = rank as u32;
            rank_to_tuple[rank] = tuple;
        }
        p.kind = Kind::Product {
            factors,
            tuple_to_rank,
            rank_to_tuple,
        };
        p.build_table();
        Ok(p)
    }

    fn assemble(
        spec: PresentationSpec,
        kind: Kind,
        generators: Vec<Generator>,
        mut basis: Vec<Monomial>,
    ) -> Presentation {
        let degree_of = |m: &Monomial| -> u32 {
            m.0.iter().zip(&generators).map(|(e, g)| e * g.degree).sum()
        };
        basis.sort_by(|x, y| degree_of(x).cmp(&degree_of(y)).then_with(|| x.cmp(y)));
        let degrees: Vec<u32> = basis.iter().map(degree_of).collect();
        let top_degree = degrees.last().copied().unwrap_or(0);
        let mut slice_start = vec![0usize; top_degree as usize + 2];
        for &d in &degrees {
            slice_start[d as usize + 1] += 1;
        }
        for d in 1..slice_start.len() {
            slice_start[d] += slice_start[d - 1];
        }
        Presentation {
            spec,
            kind,
            generators,
            basis,
            degrees,
            slice_start,
            top_degree,
            table: None,
        }
    }

    fn build_table(&mut self) {
        let n = self.basis_len();
        if n > TABLE_LIMIT {
            return;
        }
        let mut offsets = Vec::with_capacity(n * n + 1);
        let mut data = Vec::new();
        offsets.push(0u32);
        for i in 0..n {
            for j in 0..n {
                let raw = Monomial(
                    self.basis[i]
                        .0
                        .iter()
                        .zip(&self.basis[j].0)
                        .map(|(x, y)| x + y)
                        .collect(),
                );
                let nf = self.normal_form_bits(&raw);
                data.extend(nf.ones().map(|r| r as u32));
                offsets.push(data.len() as u32);
            }
        }
        self.table = Some(ProductTable { offsets, data });
    }

    pub fn spec(&self) -> &PresentationSpec {
        &self.spec
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g.name == name)
    }

    pub fn min_generator_degree(&self) -> u32 {
        self.generators.iter().map(|g| g.degree).min().unwrap_or(1)
    }

    pub fn basis(&self) -> &[Monomial] {
        &self.basis
    }

    pub fn basis_len(&self) -> usize {
        self.basis.len()
    }

    pub fn degree_of(&self, rank: usize) -> u32 {
        self.degrees[rank]
    }

    pub fn top_degree(&self) -> u32 {
        self.top_degree
    }

    /// Rank of the unique basis monomial in top degree.
    pub fn top_rank(&self) -> usize {
        self.basis_len() - 1
    }

    /// Basis ranks of degree `d` (empty beyond the top degree).
    pub fn slice(&self, d: u32) -> Range<usize> {
        let d = d as usize;
        if d + 1 >= self.slice_start.len() {
            let n = self.basis_len();
            return n..n;
        }
        self.slice_start[d]..self.slice_start[d + 1]
    }

    pub fn poincare_series(&self) -> Vec<usize> {
        (0..=self.top_degree).map(|d| self.slice(d).len()).collect()
    }

    pub fn is_basic(&self, m: &Monomial) -> bool {
        self.rank_of(m).is_some()
    }

    pub fn rank_of(&self, m: &Monomial) -> Option<usize> {
        if m.0.len() != self.generators.len() {
            return None;
        }
        match &self.kind {
            Kind::Milnor { s, r, rank_grid } => {
                let (i, j) = (m.0[0], m.0[1]);
                (i <= *s && j < *r).then(|| rank_grid[(i * r + j) as usize] as usize)
            }
            Kind::Truncated { m: top } => (m.0[0] <= *top).then_some(m.0[0] as usize),
            Kind::Product {
                factors,
                tuple_to_rank,
                ..
            } => {
                let mut idx = 0usize;
                let mut offset = 0;
                for f in factors {
                    let k = f.generators.len();
                    let sub = Monomial(m.0[offset..offset + k].to_vec());
                    idx = idx * f.basis_len() + f.rank_of(&sub)?;
                    offset += k;
                }
                Some(tuple_to_rank[idx] as usize)
            }
        }
    }

    /// Basis ranks of the reduced product of basis monomials `i` and `j`.
    pub fn mul_basis(&self, i: usize, j: usize) -> Cow<'_, [u32]> {
        if let Some(t) = &self.table {
            let n = self.basis_len();
            let k = i * n + j;
            return Cow::Borrowed(&t.data[t.offsets[k] as usize..t.offsets[k + 1] as usize]);
        }
        match &self.kind {
            Kind::Product {
                factors,
                tuple_to_rank,
                rank_to_tuple,
            } => {
                let (ti, tj) = (&rank_to_tuple[i], &rank_to_tuple[j]);
                let mut acc: Vec<usize> = vec![0];
                for (k, f) in factors.iter().enumerate() {
                    let part = f.mul_basis(ti[k] as usize, tj[k] as usize);
                    if part.is_empty() {
                        return Cow::Owned(Vec::new());
                    }
                    let size = f.basis_len();
                    acc = acc
                        .iter()
                        .flat_map(|&a| part.iter().map(move |&p| a * size + p as usize))
                        .collect();
                }
                Cow::Owned(acc.into_iter().map(|idx| tuple_to_rank[idx]).collect())
            }
            _ => {
                let raw = Monomial(
                    self.basis[i]
                        .0
                        .iter()
                        .zip(&self.basis[j].0)
                        .map(|(x, y)| x + y)
                        .collect(),
                );
                Cow::Owned(self.normal_form_bits(&raw).ones().map(|r| r as u32).collect())
            }
        }
    }

    /// Reduces an arbitrary exponent vector to its basis expansion.
    fn normal_form_bits(&self, raw: &Monomial) -> BitRow {
        let mut out = BitRow::zeros(self.basis_len());
        match &self.kind {
            Kind::Milnor { s, r, rank_grid } => {
                let (s, r) = (*s, *r);
                // Keyed by (b-exponent, a-exponent) so the largest b-exponent is rewritten first.
                let mut pending: BTreeSet<(u32, u32)> = BTreeSet::new();
                if raw.0[0] <= s {
                    pending.insert((raw.0[1], raw.0[0]));
                }
                while let Some((j, i)) = pending.pop_last() {
                    if j < r {
                        out.flip(rank_grid[(i * r + j) as usize] as usize);
                        continue;
                    }
                    // b^r = sum_{k=1..s} a^k b^(r-k); a-exponents above s vanish.
                    for k in 1..=s {
                        if i + k > s {
                            break;
                        }
                        let key = (j - k, i + k);
                        if !pending.remove(&key) {
                            pending.insert(key);
                        }
                    }
                }
            }
            Kind::Truncated { m } => {
                if raw.0[0] <= *m {
                    out.flip(raw.0[0] as usize);
                }
            }
            Kind::Product {
                factors,
                tuple_to_rank,
                ..
            } => {
                let mut acc: Vec<usize> = vec![0];
                let mut offset = 0;
                for f in factors {
                    let k = f.generators.len();
                    let part = f.normal_form_bits(&Monomial(raw.0[offset..offset + k].to_vec()));
                    offset += k;
                    let size = f.basis_len();
                    acc = acc
                        .iter()
                        .flat_map(|&a| part.ones().map(move |p| a * size + p))
                        .collect();
                    if acc.is_empty() {
                        break;
                    }
                }
                for idx in acc {
                    out.flip(tuple_to_rank[idx] as usize);
                }
            }
        }
        out
    }

    /// Writes a basis monomial with generator names, e.g. `a^2b` or `x.1^3x.2`.
    pub fn monomial_string(&self, rank: usize) -> String {
        let mono = &self.basis[rank];
        let mut out = String::new();
        for (e, g) in mono.0.iter().zip(&self.generators) {
            match e {
                0 => {}
                1 => out.push_str(&g.name),
                _ => out.push_str(&format!("{}^{}", g.name, e)),
            }
        }
        if out.is_empty() {
            out.push('1');
        }
        out
    }
}

fn spec_milnor(s: u32, r: u32, gen_degree: u32) -> PresentationSpec {
    PresentationSpec::Milnor { s, r, gen_degree }
}

/// Unique basis expansion of `raw` under the presentation's relations.
pub fn normal_form(p: &Arc<Presentation>, raw: &Monomial) -> Result<Element> {
    if raw.0.len() != p.generators.len() {
        return Err(Error::invalid(format!(
            "monomial has {} exponents, presentation has {} generators",
            raw.0.len(),
            p.generators.len()
        )));
    }
    Ok(Element {
        bits: p.normal_form_bits(raw),
        pres: Arc::clone(p),
    })
}

/// A mod-2 sum of basis monomials.
#[derive(Clone)]
pub struct Element {
    pres: Arc<Presentation>,
    bits: BitRow,
}

impl PartialEq for Element {
    fn eq(&self, other: &Self) -> bool {
        same_presentation(&self.pres, &other.pres) && self.bits == other.bits
    }
}

impl Eq for Element {}

pub(crate) fn same_presentation(x: &Arc<Presentation>, y: &Arc<Presentation>) -> bool {
    Arc::ptr_eq(x, y) || x.spec == y.spec
}

impl Element {
    pub fn zero(p: &Arc<Presentation>) -> Self {
        Element {
            bits: BitRow::zeros(p.basis_len()),
            pres: Arc::clone(p),
        }
    }

    pub fn unit(p: &Arc<Presentation>) -> Self {
        Self::basis_element(p, 0)
    }

    pub fn basis_element(p: &Arc<Presentation>, rank: usize) -> Self {
        let mut e = Self::zero(p);
        e.bits.flip(rank);
        e
    }

    pub fn generator(p: &Arc<Presentation>, name: &str) -> Result<Self> {
        let idx = p
            .generator_index(name)
            .ok_or_else(|| Error::UnknownGenerator(name.to_string()))?;
        let mut exps = vec![0; p.generators.len()];
        exps[idx] = 1;
        normal_form(p, &Monomial(exps))
    }

    pub fn from_ranks(p: &Arc<Presentation>, ranks: impl IntoIterator<Item = usize>) -> Self {
        Element {
            bits: BitRow::from_indices(p.basis_len(), ranks),
            pres: Arc::clone(p),
        }
    }

    pub fn presentation(&self) -> &Arc<Presentation> {
        &self.pres
    }

    pub fn bits(&self) -> &BitRow {
        &self.bits
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.ones()
    }

    pub fn is_zero(&self) -> bool {
        self.bits.is_zero()
    }

    /// Degree of a nonzero homogeneous element.
    pub fn degree(&self) -> Option<u32> {
        let mut degrees = self.support().map(|r| self.pres.degree_of(r));
        let first = degrees.next()?;
        degrees.all(|d| d == first).then_some(first)
    }

    pub fn add(&self, other: &Element) -> Result<Element> {
        if !same_presentation(&self.pres, &other.pres) {
            return Err(Error::PresentationMismatch);
        }
        let mut bits = self.bits.clone();
        bits.xor_assign(&other.bits);
        Ok(Element {
            bits,
            pres: Arc::clone(&self.pres),
        })
    }

    pub fn multiply(&self, other: &Element) -> Result<Element> {
        if !same_presentation(&self.pres, &other.pres) {
            return Err(Error::PresentationMismatch);
        }
        let mut bits = BitRow::zeros(self.pres.basis_len());
        for i in self.support() {
            for j in other.support() {
                for &k in self.pres.mul_basis(i, j).iter() {
                    bits.flip(k as usize);
                }
            }
        }
        Ok(Element {
            bits,
            pres: Arc::clone(&self.pres),
        })
    }

    pub fn power(&self, e: u32) -> Element {
        let mut acc = Element::unit(&self.pres);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.multiply(&base).expect("same presentation");
            }
            e >>= 1;
            if e > 0 {
                base = base.multiply(&base).expect("same presentation");
            }
        }
        acc
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let terms: Vec<String> = self.support().map(|r| self.pres.monomial_string(r)).collect();
        f.write_str(&terms.join(" + "))
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Element({self})")
    }
}

/// Parity of the binomial coefficient `n choose k`: odd iff the bits of `k`
/// are contained in the bits of `n`. Returns 0 when `k > n`.
pub fn binom_mod2(n: u64, k: u64) -> u8 {
    if k > n {
        return 0;
    }
    u8::from(k & !n == 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rh(s: u32, r: u32) -> Arc<Presentation> {
        make_presentation(&PresentationSpec::milnor(s, r)).unwrap()
    }

    fn mono(p: &Arc<Presentation>, exps: &[u32]) -> Element {
        normal_form(p, &Monomial(exps.to_vec())).unwrap()
    }

    #[test]
    fn klein_bottle_basis() {
        let p = rh(1, 2);
        let names: BTreeSet<String> = (0..p.basis_len()).map(|r| p.monomial_string(r)).collect();
        assert_eq!(names, ["1", "a", "b", "ab"].iter().map(|s| s.to_string()).collect());
        assert_eq!(p.top_degree(), 2);
        assert_eq!(p.monomial_string(p.top_rank()), "ab");
    }

    #[test]
    fn truncated_basis_and_top_degree() {
        let p = make_presentation(&PresentationSpec::truncated(2)).unwrap();
        assert_eq!(p.basis_len(), 3);
        assert_eq!(p.top_degree(), 2);
        assert_eq!(p.poincare_series(), vec![1, 1, 1]);
    }

    #[test]
    fn rh43_basis_size_and_series() {
        let p = rh(3, 4);
        assert_eq!(p.basis_len(), 16);
        assert_eq!(p.top_degree(), 6);
        assert_eq!(p.poincare_series(), vec![1, 2, 3, 4, 3, 2, 1]);
        assert_eq!(rh(1, 2).poincare_series(), vec![1, 2, 1]);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(make_presentation(&PresentationSpec::milnor(3, 2)).is_err());
        assert!(make_presentation(&PresentationSpec::milnor(0, 0)).is_err());
        assert!(make_presentation(&PresentationSpec::Milnor { s: 1, r: 2, gen_degree: 3 }).is_err());
        assert!(make_presentation(&PresentationSpec::Product { factors: vec![] }).is_err());
    }

    #[test]
    fn klein_bottle_relations() {
        let p = rh(1, 2);
        let a = mono(&p, &[1, 0]);
        let ab = mono(&p, &[1, 1]);
        assert_eq!(mono(&p, &[0, 2]), ab);
        assert!(mono(&p, &[2, 0]).is_zero());
        assert!(mono(&p, &[0, 3]).is_zero());
        assert_eq!(a.multiply(&a).unwrap(), Element::zero(&p));
    }

    #[test]
    fn rh43_b4_rewrite() {
        let p = rh(3, 4);
        let expected = mono(&p, &[1, 3])
            .add(&mono(&p, &[2, 2]))
            .unwrap()
            .add(&mono(&p, &[3, 1]))
            .unwrap();
        assert_eq!(mono(&p, &[0, 4]), expected);
    }

    #[test]
    fn klein_bottle_products() {
        let p = rh(1, 2);
        let a = Element::generator(&p, "a").unwrap();
        let b = Element::generator(&p, "b").unwrap();
        let ab = a.multiply(&b).unwrap();
        assert_eq!(b.multiply(&b).unwrap(), ab);
        assert!(ab.multiply(&b).unwrap().is_zero());
        assert!(a.add(&b).unwrap().multiply(&b).unwrap().is_zero());
        assert!(b.power(3).is_zero());
        assert_eq!(b.power(0), Element::unit(&p));
    }

    #[test]
    fn truncated_powers() {
        let p = make_presentation(&PresentationSpec::truncated(2)).unwrap();
        let x = Element::generator(&p, "x").unwrap();
        assert_eq!(x.power(2).to_string(), "x^2");
        assert!(x.power(3).is_zero());
    }

    #[test]
    fn degenerate_s_zero_is_truncated_b() {
        let p = rh(0, 3);
        assert_eq!(p.poincare_series(), vec![1, 1, 1]);
        let b = Element::generator(&p, "b").unwrap();
        assert!(!b.power(2).is_zero());
        assert!(b.power(3).is_zero());
    }

    #[test]
    fn complex_case_regrades_only() {
        let p = make_presentation(&PresentationSpec::Milnor { s: 3, r: 4, gen_degree: 2 }).unwrap();
        assert_eq!(p.top_degree(), 12);
        assert_eq!(p.poincare_series(), vec![1, 0, 2, 0, 3, 0, 4, 0, 3, 0, 2, 0, 1]);
        let real = rh(3, 4);
        let b = Element::generator(&p, "b").unwrap().power(4);
        let rb = Element::generator(&real, "b").unwrap().power(4);
        assert_eq!(b.to_string(), rb.to_string());
    }

    #[test]
    fn product_presentation_multiplies_componentwise() {
        let spec = PresentationSpec::Product {
            factors: vec![PresentationSpec::truncated(3), PresentationSpec::truncated(2)],
        };
        let p = make_presentation(&spec).unwrap();
        assert_eq!(p.basis_len(), 12);
        assert_eq!(p.top_degree(), 5);
        assert_eq!(p.poincare_series(), vec![1, 2, 3, 3, 2, 1]);
        let x1 = Element::generator(&p, "x.1").unwrap();
        let x2 = Element::generator(&p, "x.2").unwrap();
        let top = x1.power(3).multiply(&x2.power(2)).unwrap();
        assert_eq!(top, Element::basis_element(&p, p.top_rank()));
        assert!(x2.power(3).is_zero());
    }

    #[test]
    fn lucas_examples() {
        assert_eq!(binom_mod2(3, 1), 1);
        assert_eq!(binom_mod2(7, 3), 1);
        assert_eq!(binom_mod2(4, 2), 0);
        assert_eq!(binom_mod2(2, 5), 0);
    }
}

//! The n-fold Künneth tensor power of a presentation.
//!
//! A tensor monomial is an n-tuple of basis ranks of the base presentation,
//! encoded as a mixed-radix integer with the first slot most significant,
//! so numeric order is lexicographic order over component ranks.

use std::fmt;
use std::sync::Arc;

use crate::algebra::{same_presentation, Element, Presentation};
use crate::bits::BitRow;
use crate::error::{Error, Result};
use crate::par::{self, Exec};

/// Default cap on the number of tensor monomials in one degree slice.
pub const DEFAULT_MAX_SLICE: usize = 1 << 20;

fn check_encodable(base: &Presentation, arity: usize) -> Result<()> {
    let radix = base.basis_len() as u64;
    if arity == 0 {
        return Err(Error::invalid("tensor arity must be at least 1"));
    }
    radix.checked_pow(arity as u32).ok_or_else(|| Error::ResourceLimit {
        what: "tensor power rank encoding".into(),
        dimension: (radix as u128).saturating_pow(arity as u32),
        cap: u64::MAX as u128,
    })?;
    Ok(())
}

/// Total dimension `N^n` of the n-fold tensor power.
pub fn tensor_dimension(base: &Presentation, arity: usize) -> u128 {
    (base.basis_len() as u128).saturating_pow(arity as u32)
}

pub fn encode(base_len: usize, components: &[usize]) -> u64 {
    components
        .iter()
        .fold(0u64, |acc, &c| acc * base_len as u64 + c as u64)
}

pub fn decode(base_len: usize, arity: usize, mut rank: u64) -> Vec<usize> {
    let mut out = vec![0; arity];
    for slot in out.iter_mut().rev() {
        *slot = (rank % base_len as u64) as usize;
        rank /= base_len as u64;
    }
    out
}

/// Pushes the reduced product of two tensor monomials onto `out`.
pub(crate) fn mul_monomials(base: &Presentation, arity: usize, u: u64, v: u64, out: &mut Vec<u64>) {
    let n = base.basis_len();
    let cu = decode(n, arity, u);
    let cv = decode(n, arity, v);
    let mut acc: Vec<u64> = vec![0];
    for k in 0..arity {
        let part = base.mul_basis(cu[k], cv[k]);
        if part.is_empty() {
            return;
        }
        if part.len() == 1 {
            let p = part[0] as u64;
            for a in acc.iter_mut() {
                *a = *a * n as u64 + p;
            }
        } else {
            acc = acc
                .iter()
                .flat_map(|&a| part.iter().map(move |&p| a * n as u64 + p as u64))
                .collect();
        }
    }
    out.extend(acc);
}

/// Sorts and removes entries that occur an even number of times.
pub(crate) fn cancel_mod2(mut terms: Vec<u64>) -> Vec<u64> {
    terms.sort_unstable();
    let mut out = Vec::with_capacity(terms.len());
    let mut i = 0;
    while i < terms.len() {
        let mut j = i;
        while j < terms.len() && terms[j] == terms[i] {
            j += 1;
        }
        if (j - i) % 2 == 1 {
            out.push(terms[i]);
        }
        i = j;
    }
    out
}

/// Degree of a tensor monomial.
pub fn monomial_degree(base: &Presentation, arity: usize, rank: u64) -> u32 {
    decode(base.basis_len(), arity, rank)
        .into_iter()
        .map(|c| base.degree_of(c))
        .sum()
}

/// Base-ring product of the components of a tensor monomial, as sorted ranks.
pub(crate) fn diagonal_of_monomial(base: &Presentation, arity: usize, rank: u64) -> Vec<u32> {
    let comps = decode(base.basis_len(), arity, rank);
    let mut cur: Vec<u32> = vec![comps[0] as u32];
    for &c in &comps[1..] {
        let mut next = Vec::new();
        for &r in &cur {
            next.extend(base.mul_basis(r as usize, c).iter().copied());
        }
        next.sort_unstable();
        let mut parity: Vec<u32> = Vec::with_capacity(next.len());
        for x in next {
            if parity.last() == Some(&x) {
                parity.pop();
            } else {
                parity.push(x);
            }
        }
        cur = parity;
        if cur.is_empty() {
            break;
        }
    }
    cur
}

#[derive(Clone)]
pub struct TensorElement {
    base: Arc<Presentation>,
    arity: usize,
    /// Sorted, duplicate-free tensor monomial ranks.
    support: Vec<u64>,
}

impl PartialEq for TensorElement {
    fn eq(&self, other: &Self) -> bool {
        same_presentation(&self.base, &other.base)
            && self.arity == other.arity
            && self.support == other.support
    }
}

impl Eq for TensorElement {}

impl TensorElement {
    pub fn zero(base: &Arc<Presentation>, arity: usize) -> Result<Self> {
        check_encodable(base, arity)?;
        Ok(TensorElement {
            base: Arc::clone(base),
            arity,
            support: Vec::new(),
        })
    }

    pub fn unit(base: &Arc<Presentation>, arity: usize) -> Result<Self> {
        let mut e = Self::zero(base, arity)?;
        e.support.push(0);
        Ok(e)
    }

    /// Element with the given monomial ranks, cancelling repeats mod 2.
    pub fn from_monomials(
        base: &Arc<Presentation>,
        arity: usize,
        ranks: impl IntoIterator<Item = u64>,
    ) -> Result<Self> {
        let mut e = Self::zero(base, arity)?;
        let limit = tensor_dimension(base, arity);
        let ranks: Vec<u64> = ranks.into_iter().collect();
        if let Some(&bad) = ranks.iter().find(|&&r| r as u128 >= limit) {
            return Err(Error::invalid(format!("tensor monomial rank {bad} out of range")));
        }
        e.support = cancel_mod2(ranks);
        Ok(e)
    }

    pub fn base(&self) -> &Arc<Presentation> {
        &self.base
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn support(&self) -> &[u64] {
        &self.support
    }

    pub fn is_zero(&self) -> bool {
        self.support.is_empty()
    }

    /// Degree of a nonzero homogeneous element.
    pub fn degree(&self) -> Option<u32> {
        let mut degrees = self
            .support
            .iter()
            .map(|&m| monomial_degree(&self.base, self.arity, m));
        let first = degrees.next()?;
        degrees.all(|d| d == first).then_some(first)
    }

    /// True when no support monomial has degree zero.
    pub fn in_positive_degrees(&self) -> bool {
        self.support.first().is_none_or(|&m| m != 0)
    }

    fn check_compatible(&self, other: &TensorElement) -> Result<()> {
        if !same_presentation(&self.base, &other.base) {
            return Err(Error::PresentationMismatch);
        }
        if self.arity != other.arity {
            return Err(Error::ArityMismatch {
                expected: self.arity,
                found: other.arity,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &TensorElement) -> Result<TensorElement> {
        self.check_compatible(other)?;
        let mut terms = self.support.clone();
        terms.extend_from_slice(&other.support);
        Ok(TensorElement {
            base: Arc::clone(&self.base),
            arity: self.arity,
            support: cancel_mod2(terms),
        })
    }

    pub fn multiply(&self, other: &TensorElement) -> Result<TensorElement> {
        self.check_compatible(other)?;
        let mut terms = Vec::new();
        for &u in &self.support {
            for &v in &other.support {
                mul_monomials(&self.base, self.arity, u, v, &mut terms);
            }
        }
        Ok(TensorElement {
            base: Arc::clone(&self.base),
            arity: self.arity,
            support: cancel_mod2(terms),
        })
    }

    pub fn power(&self, e: u32) -> TensorElement {
        let mut acc = TensorElement {
            base: Arc::clone(&self.base),
            arity: self.arity,
            support: vec![0],
        };
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.multiply(&base).expect("compatible");
            }
            e >>= 1;
            if e > 0 {
                base = base.multiply(&base).expect("compatible");
            }
        }
        acc
    }

    /// Image under the map induced by the diagonal `X -> X^n`.
    pub fn diagonal_eval(&self) -> Element {
        let mut bits = BitRow::zeros(self.base.basis_len());
        for &m in &self.support {
            for r in diagonal_of_monomial(&self.base, self.arity, m) {
                bits.flip(r as usize);
            }
        }
        Element::from_ranks(&self.base, bits.ones())
    }

    pub fn components(&self, rank: u64) -> Vec<usize> {
        decode(self.base.basis_len(), self.arity, rank)
    }
}

impl fmt::Display for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let terms: Vec<String> = self
            .support
            .iter()
            .map(|&m| {
                self.components(m)
                    .into_iter()
                    .map(|c| self.base.monomial_string(c))
                    .collect::<Vec<_>>()
                    .join("⊗")
            })
            .collect();
        f.write_str(&terms.join(" + "))
    }
}

impl fmt::Debug for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TensorElement({self})")
    }
}

/// Places `x` in slot `position` (1-based) with units elsewhere.
pub fn inject(base: &Arc<Presentation>, arity: usize, position: usize, x: &Element) -> Result<TensorElement> {
    if position == 0 || position > arity {
        return Err(Error::PositionOutOfRange { position, arity });
    }
    if !same_presentation(base, x.presentation()) {
        return Err(Error::PresentationMismatch);
    }
    check_encodable(base, arity)?;
    let mut comps = vec![0usize; arity];
    let support = x
        .support()
        .map(|r| {
            comps[position - 1] = r;
            encode(base.basis_len(), &comps)
        })
        .collect::<Vec<_>>();
    TensorElement::from_monomials(base, arity, support)
}

/// Dimension of the degree-`d` slice: the degree-`d` coefficient of the
/// n-th power of the Poincaré series.
pub fn slice_dimension(base: &Presentation, arity: usize, d: u32) -> u128 {
    let series: Vec<u128> = base.poincare_series().into_iter().map(|c| c as u128).collect();
    let mut acc = vec![1u128];
    for _ in 0..arity {
        let mut next = vec![0u128; acc.len() + series.len() - 1];
        for (i, &x) in acc.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in series.iter().enumerate() {
                next[i + j] = next[i + j].saturating_add(x.saturating_mul(y));
            }
        }
        acc = next;
    }
    acc.get(d as usize).copied().unwrap_or(0)
}

/// The tensor monomials of one degree, in increasing rank order.
#[derive(Clone, Debug)]
pub struct Slice {
    pub degree: u32,
    pub monomials: Vec<u64>,
}

impl Slice {
    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn index_of(&self, rank: u64) -> Option<usize> {
        self.monomials.binary_search(&rank).ok()
    }
}

pub fn slice(base: &Presentation, arity: usize, d: u32, max_slice: usize) -> Result<Slice> {
    check_encodable(base, arity)?;
    let dim = slice_dimension(base, arity, d);
    if dim > max_slice as u128 {
        return Err(Error::ResourceLimit {
            what: format!("degree-{d} slice of the {arity}-fold tensor power"),
            dimension: dim,
            cap: max_slice as u128,
        });
    }
    let top = base.top_degree();
    let n = base.basis_len() as u64;
    let mut monomials = Vec::with_capacity(dim as usize);
    #[allow(clippy::too_many_arguments)]
    fn walk(
        base: &Presentation,
        arity: usize,
        top: u32,
        n: u64,
        slot: usize,
        remaining: u32,
        prefix: u64,
        out: &mut Vec<u64>,
    ) {
        if slot == arity {
            if remaining == 0 {
                out.push(prefix);
            }
            return;
        }
        let slots_after = (arity - slot - 1) as u32;
        for e in 0..=remaining.min(top) {
            if remaining - e > slots_after * top {
                continue;
            }
            for c in base.slice(e) {
                walk(base, arity, top, n, slot + 1, remaining - e, prefix * n + c as u64, out);
            }
        }
    }
    walk(base, arity, top, n, 0, d, 0, &mut monomials);
    debug_assert!(monomials.windows(2).all(|w| w[0] < w[1]));
    Ok(Slice { degree: d, monomials })
}

/// Kernel of the diagonal map on one degree slice; vectors are sparse lists
/// of slice indices.
#[derive(Clone, Debug)]
pub(crate) struct SliceKernel {
    pub slice: Slice,
    pub vectors: Vec<Vec<u32>>,
    pub image_rank: usize,
}

fn symmetric_difference(x: &[u32], y: &[u32]) -> Vec<u32> {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() && j < y.len() {
        match x[i].cmp(&y[j]) {
            std::cmp::Ordering::Less => {
                out.push(x[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(y[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&x[i..]);
    out.extend_from_slice(&y[j..]);
    out
}

pub(crate) fn slice_kernel(base: &Presentation, arity: usize, d: u32, max_slice: usize) -> Result<SliceKernel> {
    let slice = slice(base, arity, d, max_slice)?;
    let target = base.slice(d);
    let offset = target.start;
    // Rows of the image echelon form, each paired with the slice columns it combines.
    let mut rows: Vec<(BitRow, Vec<u32>)> = Vec::new();
    let mut pivot_row: std::collections::HashMap<usize, usize> = std::collections::HashMap::new();
    let mut vectors = Vec::new();
    for (col, &m) in slice.monomials.iter().enumerate() {
        let image = diagonal_of_monomial(base, arity, m);
        let mut v = BitRow::from_indices(target.len(), image.iter().map(|&r| r as usize - offset));
        let mut combo = vec![col as u32];
        while let Some(p) = v.lowest_one() {
            match pivot_row.get(&p) {
                Some(&r) => {
                    v.xor_assign(&rows[r].0);
                    combo = symmetric_difference(&combo, &rows[r].1);
                }
                None => break,
            }
        }
        match v.lowest_one() {
            None => vectors.push(combo),
            Some(p) => {
                pivot_row.insert(p, rows.len());
                rows.push((v, combo));
            }
        }
    }
    Ok(SliceKernel {
        slice,
        vectors,
        image_rank: rows.len(),
    })
}

/// A basis of the kernel of the diagonal map in one degree.
#[derive(Clone, Debug)]
pub struct KernelBasis {
    pub arity: usize,
    pub degree: u32,
    pub elements: Vec<TensorElement>,
    pub slice_dimension: usize,
    pub image_rank: usize,
}

impl KernelBasis {
    pub fn nullity(&self) -> usize {
        self.elements.len()
    }
}

pub fn kernel_basis(base: &Arc<Presentation>, arity: usize, degree: u32, max_slice: usize) -> Result<KernelBasis> {
    let k = slice_kernel(base, arity, degree, max_slice)?;
    let elements = k
        .vectors
        .iter()
        .map(|v| {
            TensorElement::from_monomials(base, arity, v.iter().map(|&i| k.slice.monomials[i as usize]))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(KernelBasis {
        arity,
        degree,
        elements,
        slice_dimension: k.slice.len(),
        image_rank: k.image_rank,
    })
}

/// Kernel bases for every degree `0..=n*D`, computed slice by slice.
pub fn kernel_bases(
    base: &Arc<Presentation>,
    arity: usize,
    max_slice: usize,
    exec: Exec,
) -> Result<Vec<KernelBasis>> {
    let degrees: Vec<u32> = (0..=arity as u32 * base.top_degree()).collect();
    par::map(exec, &degrees, |&d| kernel_basis(base, arity, d, max_slice))
        .into_iter()
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{make_presentation, PresentationSpec};

    fn rh21() -> Arc<Presentation> {
        make_presentation(&PresentationSpec::milnor(1, 2)).unwrap()
    }

    fn rp(m: u32) -> Arc<Presentation> {
        make_presentation(&PresentationSpec::truncated(m)).unwrap()
    }

    fn gen_at(p: &Arc<Presentation>, n: usize, i: usize, name: &str) -> TensorElement {
        inject(p, n, i, &Element::generator(p, name).unwrap()).unwrap()
    }

    #[test]
    fn inject_places_component() {
        let p = rh21();
        let e = gen_at(&p, 3, 2, "a");
        assert_eq!(e.to_string(), "1⊗a⊗1");
        assert!(inject(&p, 3, 2, &Element::zero(&p)).unwrap().is_zero());
        assert!(matches!(
            inject(&p, 3, 4, &Element::unit(&p)),
            Err(Error::PositionOutOfRange { .. })
        ));
        assert!(inject(&p, 3, 0, &Element::unit(&p)).is_err());
    }

    #[test]
    fn bar_alpha_on_rp2() {
        let p = rp(2);
        let bar = gen_at(&p, 2, 1, "x").add(&gen_at(&p, 2, 2, "x")).unwrap();
        let mut terms: Vec<String> = bar.to_string().split(" + ").map(String::from).collect();
        terms.sort();
        assert_eq!(terms, vec!["1⊗x", "x⊗1"]);
    }

    #[test]
    fn squares_and_cubes() {
        let p = rh21();
        let bar_b = gen_at(&p, 2, 1, "b").add(&gen_at(&p, 2, 2, "b")).unwrap();
        let ab = Element::generator(&p, "a")
            .unwrap()
            .multiply(&Element::generator(&p, "b").unwrap())
            .unwrap();
        let expected = inject(&p, 2, 1, &ab).unwrap().add(&inject(&p, 2, 2, &ab).unwrap()).unwrap();
        assert_eq!(bar_b.power(2), expected);

        let q = rp(2);
        let bar = gen_at(&q, 2, 1, "x").add(&gen_at(&q, 2, 2, "x")).unwrap();
        let x = Element::generator(&q, "x").unwrap();
        let x2 = x.power(2);
        let expected = inject(&q, 2, 1, &x2)
            .unwrap()
            .multiply(&inject(&q, 2, 2, &x).unwrap())
            .unwrap()
            .add(
                &inject(&q, 2, 1, &x)
                    .unwrap()
                    .multiply(&inject(&q, 2, 2, &x2).unwrap())
                    .unwrap(),
            )
            .unwrap();
        assert_eq!(bar.power(3), expected);
        assert_eq!(bar.multiply(&TensorElement::unit(&q, 2).unwrap()).unwrap(), bar);
    }

    #[test]
    fn diagonal_examples() {
        let p = rh21();
        let a1b2 = gen_at(&p, 2, 1, "a").multiply(&gen_at(&p, 2, 2, "b")).unwrap();
        assert_eq!(a1b2.diagonal_eval().to_string(), "ab");
        let bar_a = gen_at(&p, 2, 1, "a").add(&gen_at(&p, 2, 2, "a")).unwrap();
        assert!(bar_a.diagonal_eval().is_zero());
        let abb = gen_at(&p, 3, 1, "a")
            .multiply(&gen_at(&p, 3, 2, "b"))
            .unwrap()
            .multiply(&gen_at(&p, 3, 3, "b"))
            .unwrap();
        assert!(abb.diagonal_eval().is_zero());
    }

    #[test]
    fn kernel_nullities() {
        let p = rh21();
        let k = kernel_basis(&p, 2, 1, DEFAULT_MAX_SLICE).unwrap();
        assert_eq!(k.slice_dimension, 4);
        assert_eq!(k.nullity(), 2);
        assert_eq!(k.image_rank, 2);
        assert!(k.elements.iter().all(|e| e.diagonal_eval().is_zero()));
        assert_eq!(kernel_basis(&rp(2), 2, 1, DEFAULT_MAX_SLICE).unwrap().nullity(), 1);
        assert_eq!(kernel_basis(&p, 3, 0, DEFAULT_MAX_SLICE).unwrap().nullity(), 0);
    }

    #[test]
    fn slice_cap_is_enforced() {
        let p = rh21();
        let err = kernel_basis(&p, 4, 4, 10).unwrap_err();
        assert!(err.is_resource_limit());
    }

    #[test]
    fn slice_dimensions_match_series_power() {
        let p = rh21();
        let dims: Vec<u128> = (0..=4).map(|d| slice_dimension(&p, 2, d)).collect();
        assert_eq!(dims, vec![1, 4, 6, 4, 1]);
        for d in 0..=4 {
            assert_eq!(slice(&p, 2, d, DEFAULT_MAX_SLICE).unwrap().len() as u128, dims[d as usize]);
        }
    }

    #[test]
    fn encode_decode_inverse() {
        assert_eq!(decode(7, 3, encode(7, &[3, 0, 6])), vec![3, 0, 6]);
        assert_eq!(cancel_mod2(vec![5, 1, 5, 5, 2, 2]), vec![1, 5]);
    }
}

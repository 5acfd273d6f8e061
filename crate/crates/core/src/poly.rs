//! Univariate polynomials over a [`FieldSpec`]: Euclidean arithmetic,
//! squarefreeness, irreducibility, and deterministic factorization.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::field::FieldSpec;

/// Ascending coefficient codes with no trailing zeros; the zero polynomial is empty.
#[derive(Clone, PartialEq, Eq)]
pub struct PolyGF {
    field: FieldSpec,
    coeffs: Vec<u32>,
}

impl PolyGF {
    pub fn new(field: FieldSpec, mut coeffs: Vec<u32>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        PolyGF { field, coeffs }
    }

    pub fn zero(field: FieldSpec) -> Self {
        PolyGF { field, coeffs: Vec::new() }
    }

    pub fn one(field: FieldSpec) -> Self {
        PolyGF { field, coeffs: vec![1] }
    }

    pub fn x(field: FieldSpec) -> Self {
        PolyGF { field, coeffs: vec![0, 1] }
    }

    pub fn constant(field: FieldSpec, c: u32) -> Self {
        Self::new(field, vec![c])
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> u32 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == 1
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    pub fn monic(&self) -> Self {
        match self.field.inv(self.leading()) {
            Some(inv) if inv != 1 => self.scale(inv),
            _ => self.clone(),
        }
    }

    pub fn scale(&self, c: u32) -> Self {
        let f = &self.field;
        Self::new(f.clone(), self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let c = (0..n)
            .map(|i| f.add(self.coeffs.get(i).copied().unwrap_or(0), other.coeffs.get(i).copied().unwrap_or(0)))
            .collect();
        Self::new(f.clone(), c)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let c = (0..n)
            .map(|i| f.sub(self.coeffs.get(i).copied().unwrap_or(0), other.coeffs.get(i).copied().unwrap_or(0)))
            .collect();
        Self::new(f.clone(), c)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.field.clone());
        }
        let f = &self.field;
        let mut c = vec![0u32; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                c[i + j] = f.add(c[i + j], f.mul(a, b));
            }
        }
        Self::new(f.clone(), c)
    }

    pub fn div_rem(&self, d: &Self) -> Result<(Self, Self)> {
        let dd = d.degree().ok_or(Error::ZeroPolynomial)?;
        let f = &self.field;
        let inv = f.inv(d.leading()).expect("nonzero leading coefficient");
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return Ok((Self::zero(f.clone()), self.clone()));
        }
        let mut q = vec![0u32; r.len() - dd];
        for top in (dd..r.len()).rev() {
            let c = f.mul(r[top], inv);
            if c == 0 {
                continue;
            }
            q[top - dd] = c;
            for (i, &b) in d.coeffs.iter().enumerate() {
                let t = top - dd + i;
                r[t] = f.sub(r[t], f.mul(c, b));
            }
        }
        r.truncate(dd);
        Ok((Self::new(f.clone(), q), Self::new(f.clone(), r)))
    }

    pub fn rem(&self, d: &Self) -> Result<Self> {
        Ok(self.div_rem(d)?.1)
    }

    /// Exact quotient; panics in debug builds if the division leaves a remainder.
    pub fn exact_div(&self, d: &Self) -> Result<Self> {
        let (q, r) = self.div_rem(d)?;
        debug_assert!(r.is_zero(), "inexact division");
        Ok(q)
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Extended Euclid: returns `(g, s, t)` with `s*a + t*b = g` monic.
    pub fn xgcd(&self, other: &Self) -> (Self, Self, Self) {
        let f = self.field.clone();
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Self::one(f.clone()), Self::zero(f.clone()));
        let (mut t0, mut t1) = (Self::zero(f.clone()), Self::one(f.clone()));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1).expect("nonzero divisor");
            r0 = std::mem::replace(&mut r1, r);
            let s = s0.sub(&q.mul(&s1));
            s0 = std::mem::replace(&mut s1, s);
            let t = t0.sub(&q.mul(&t1));
            t0 = std::mem::replace(&mut t1, t);
        }
        match f.inv(r0.leading()) {
            Some(inv) => (r0.scale(inv), s0.scale(inv), t0.scale(inv)),
            None => (r0, s0, t0),
        }
    }

    pub fn lcm(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.field.clone());
        }
        let g = self.gcd(other);
        self.exact_div(&g).expect("gcd is nonzero").mul(other).monic()
    }

    pub fn derivative(&self) -> Self {
        let f = &self.field;
        let c = self.coeffs.iter().enumerate().skip(1).map(|(i, &a)| f.mul(f.from_int(i as i64), a)).collect();
        Self::new(f.clone(), c)
    }

    pub fn eval(&self, x: u32) -> u32 {
        let f = &self.field;
        self.coeffs.iter().rev().fold(0, |acc, &c| f.add(f.mul(acc, x), c))
    }

    pub fn pow_mod(&self, mut e: u128, m: &Self) -> Result<Self> {
        let mut base = self.rem(m)?;
        let mut acc = Self::one(self.field.clone()).rem(m)?;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(m)?;
            }
            base = base.mul(&base).rem(m)?;
            e >>= 1;
        }
        Ok(acc)
    }

    /// True iff `gcd(f, f')` is constant.
    pub fn is_squarefree(&self) -> Result<bool> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        Ok(self.gcd(&self.derivative()).degree() == Some(0))
    }

    /// Rabin's test over GF(Q): `x^(Q^d) = x mod f` and
    /// `gcd(x^(Q^(d/r)) - x, f) = 1` for every prime `r | d`.
    pub fn is_irreducible(&self) -> Result<bool> {
        let d = self.degree().ok_or(Error::ZeroPolynomial)?;
        if d == 0 {
            return Ok(false);
        }
        if d == 1 {
            return Ok(true);
        }
        let q = self.field.order() as u128;
        let x = Self::x(self.field.clone());
        let mut frob = vec![x.rem(self)?];
        for i in 1..=d {
            let next = frob[i - 1].pow_mod(q, self)?;
            frob.push(next);
        }
        if frob[d] != frob[0] {
            return Ok(false);
        }
        for r in (2..=d).filter(|r| d % r == 0 && (2..*r).all(|s| r % s != 0)) {
            let g = self.gcd(&frob[d / r].sub(&x));
            if g.degree() != Some(0) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `g` with `g(x)^p = f(x)` when `f' = 0`.
    fn pth_root(&self) -> Self {
        let f = &self.field;
        let p = f.p() as usize;
        let root_exp = (f.order() / f.p()) as u128;
        let c = self.coeffs.iter().step_by(p).map(|&a| f.pow(a, root_exp)).collect();
        Self::new(f.clone(), c)
    }

    fn from_index(field: &FieldSpec, mut idx: u64, len: usize) -> Self {
        let q = field.order() as u64;
        let mut c = Vec::with_capacity(len);
        for _ in 0..len {
            c.push((idx % q) as u32);
            idx /= q;
        }
        Self::new(field.clone(), c)
    }

    /// Evaluates the polynomial at `x` in a commutative algebra given by
    /// `one`, `add`, `scale` and `mul`.
    pub fn eval_with<T: Clone>(
        &self,
        x: &T,
        one: T,
        add: impl Fn(&T, &T) -> T,
        scale: impl Fn(&T, u32) -> T,
        mul: impl Fn(&T, &T) -> T,
        zero: T,
    ) -> T {
        let mut acc = zero;
        for &c in self.coeffs.iter().rev() {
            acc = mul(&acc, x);
            acc = add(&acc, &scale(&one, c));
        }
        acc
    }
}

impl PartialOrd for PolyGF {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Degree first, then coefficients from the top down.
impl Ord for PolyGF {
    fn cmp(&self, other: &Self) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}

impl fmt::Display for PolyGF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (i, c) {
                (0, c) => write!(f, "{c}")?,
                (1, 1) => write!(f, "x")?,
                (1, c) => write!(f, "{c}x")?,
                (i, 1) => write!(f, "x^{i}")?,
                (i, c) => write!(f, "{c}x^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for PolyGF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

pub fn is_squarefree(f: &PolyGF) -> Result<bool> {
    f.is_squarefree()
}

/// Monic irreducible factors with multiplicities, sorted by degree then
/// coefficients. The leading unit of `f` is dropped.
pub fn factor_poly(f: &PolyGF) -> Result<Vec<(PolyGF, usize)>> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut out = Vec::new();
    for (part, mult) in squarefree_decomposition(&f.monic()) {
        for (g, k) in distinct_degree(&part)? {
            for h in equal_degree(&g, k)? {
                out.push((h, mult));
            }
        }
    }
    out.sort();
    Ok(out)
}

/// Yun's algorithm adapted to characteristic p.
fn squarefree_decomposition(f: &PolyGF) -> Vec<(PolyGF, usize)> {
    let mut out = Vec::new();
    if f.degree().unwrap_or(0) == 0 {
        return out;
    }
    let mut c = f.gcd(&f.derivative());
    let mut w = f.exact_div(&c).expect("gcd divides f");
    let mut i = 1;
    while !w.is_one() {
        let y = w.gcd(&c);
        let z = w.exact_div(&y).expect("gcd divides w");
        if !z.is_one() {
            out.push((z, i));
        }
        i += 1;
        c = c.exact_div(&y).expect("gcd divides c");
        w = y;
    }
    if !c.is_one() {
        let p = f.field().p() as usize;
        for (g, m) in squarefree_decomposition(&c.pth_root()) {
            out.push((g, m * p));
        }
    }
    out
}

/// Splits a squarefree monic polynomial into products of equal-degree irreducibles.
fn distinct_degree(f: &PolyGF) -> Result<Vec<(PolyGF, usize)>> {
    let field = f.field().clone();
    let q = field.order() as u128;
    let x = PolyGF::x(field.clone());
    let mut out = Vec::new();
    let mut rest = f.clone();
    let mut h = x.rem(&rest)?;
    let mut k = 1;
    while rest.degree().unwrap_or(0) >= 2 * k {
        h = h.pow_mod(q, &rest)?;
        let g = rest.gcd(&h.sub(&x));
        if !g.is_one() {
            rest = rest.exact_div(&g)?;
            h = h.rem(&rest)?;
            out.push((g, k));
        }
        k += 1;
    }
    if let Some(d) = rest.degree().filter(|&d| d > 0) {
        out.push((rest, d));
    }
    Ok(out)
}

/// Splits a product of distinct monic irreducibles of degree `k`.
///
/// Degree one uses an exhaustive root search. Higher degrees use the
/// Cantor-Zassenhaus split with test polynomials enumerated in a fixed order
/// instead of drawn at random, so the output is reproducible.
fn equal_degree(f: &PolyGF, k: usize) -> Result<Vec<PolyGF>> {
    let d = f.degree().ok_or(Error::ZeroPolynomial)?;
    if d == k {
        return Ok(vec![f.clone()]);
    }
    let field = f.field().clone();
    if k == 1 && field.order() <= 1 << 16 {
        let roots = (0..field.order()).filter(|&a| f.eval(a) == 0);
        return Ok(roots.map(|a| PolyGF::new(field.clone(), vec![field.neg(a), 1])).collect());
    }
    let q = field.order() as u128;
    let qk = q.pow(k as u32);
    let one = PolyGF::one(field.clone());
    for idx in (field.order() as u64).. {
        let h = PolyGF::from_index(&field, idx, d);
        if h.degree().unwrap_or(0) == 0 {
            continue;
        }
        let s = if field.p() == 2 {
            let m = field.ell() as usize * k;
            let mut acc = PolyGF::zero(field.clone());
            let mut t = h.rem(f)?;
            for _ in 0..m {
                acc = acc.add(&t);
                t = t.mul(&t).rem(f)?;
            }
            acc
        } else {
            h.pow_mod((qk - 1) / 2, f)?.sub(&one)
        };
        let g = f.gcd(&s);
        let gd = g.degree().unwrap_or(0);
        if gd > 0 && gd < d {
            let mut out = equal_degree(&g, k)?;
            out.extend(equal_degree(&f.exact_div(&g)?, k)?);
            return Ok(out);
        }
    }
    unreachable!()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{field_of_order, make_prime_field};

    fn poly(q: u64, c: &[u32]) -> PolyGF {
        PolyGF::new(field_of_order(q).unwrap(), c.to_vec())
    }

    fn expand(factors: &[(PolyGF, usize)], field: &FieldSpec) -> PolyGF {
        factors.iter().fold(PolyGF::one(field.clone()), |acc, (g, m)| (0..*m).fold(acc, |a, _| a.mul(g)))
    }

    #[test]
    fn factor_examples() {
        let f = factor_poly(&poly(2, &[0, 1, 1])).unwrap();
        assert_eq!(f, vec![(poly(2, &[0, 1]), 1), (poly(2, &[1, 1]), 1)]);
        let f = factor_poly(&poly(2, &[1, 1, 1])).unwrap();
        assert_eq!(f, vec![(poly(2, &[1, 1, 1]), 1)]);
        // x^3 - x over GF(3)
        let f = factor_poly(&poly(3, &[0, 2, 0, 1])).unwrap();
        assert_eq!(f, vec![(poly(3, &[0, 1]), 1), (poly(3, &[1, 1]), 1), (poly(3, &[2, 1]), 1)]);
        assert!(matches!(factor_poly(&poly(3, &[])), Err(Error::ZeroPolynomial)));
    }

    #[test]
    fn squarefree_examples() {
        assert!(poly(2, &[1, 1, 1]).is_squarefree().unwrap());
        assert!(!poly(2, &[0, 0, 1]).is_squarefree().unwrap());
        // (x+1)^2 (x+2) = x^3 + 4x^2 + 5x + 2 = x^3 + x^2 + 2x + 2 over GF(3)
        let f = poly(3, &[1, 1]).mul(&poly(3, &[1, 1])).mul(&poly(3, &[2, 1]));
        assert_eq!(f.coeffs(), &[2, 2, 1, 1]);
        assert!(!f.is_squarefree().unwrap());
        assert!(poly(3, &[]).is_squarefree().is_err());
    }

    #[test]
    fn inseparable_powers_factor() {
        // (x^2+x+1)^2 * x^4 over GF(2): derivative vanishes
        let g = poly(2, &[1, 1, 1]);
        let x = poly(2, &[0, 1]);
        let f = g.mul(&g).mul(&x).mul(&x).mul(&x).mul(&x);
        assert_eq!(f.derivative(), PolyGF::zero(f.field().clone()));
        assert_eq!(factor_poly(&f).unwrap(), vec![(x, 4), (g, 2)]);
    }

    #[test]
    fn x_q_minus_x_splits_completely() {
        for q in [4u64, 5, 8, 9] {
            let field = field_of_order(q).unwrap();
            let mut c = vec![0u32; q as usize + 1];
            c[1] = field.neg(1);
            c[q as usize] = 1;
            let f = factor_poly(&PolyGF::new(field.clone(), c)).unwrap();
            assert_eq!(f.len(), q as usize);
            assert!(f.iter().all(|(g, m)| g.degree() == Some(1) && *m == 1));
        }
    }

    #[test]
    fn irreducible_count_matches_necklace_formula() {
        // number of monic irreducibles of degree d over GF(q): (1/d) sum_{e|d} mu(e) q^(d/e)
        let f2 = make_prime_field(2).unwrap();
        let count = |d: usize| {
            (0..1u64 << d)
                .filter(|low| {
                    let mut c: Vec<u32> = (0..d).map(|i| ((low >> i) & 1) as u32).collect();
                    c.push(1);
                    PolyGF::new(f2.clone(), c).is_irreducible().unwrap()
                })
                .count()
        };
        assert_eq!([1, 2, 3, 4, 5, 6].map(count), [2, 1, 2, 3, 6, 9]);
    }

    #[test]
    fn equal_degree_splitting_over_extension() {
        let f4 = field_of_order(4).unwrap();
        let a = PolyGF::new(f4.clone(), vec![2, 1, 1]);
        let b = PolyGF::new(f4.clone(), vec![3, 1, 1]);
        assert!(a.is_irreducible().unwrap() && b.is_irreducible().unwrap());
        let f = factor_poly(&a.mul(&b)).unwrap();
        assert_eq!(f, vec![(a, 1), (b, 1)]);
        let f9 = field_of_order(9).unwrap();
        let irr: Vec<_> = (0..81u64)
            .map(|i| {
                let mut p = PolyGF::from_index(&f9, i, 2);
                p = p.add(&PolyGF::new(f9.clone(), vec![0, 0, 1]));
                p
            })
            .filter(|p| p.is_irreducible().unwrap())
            .take(3)
            .collect();
        let prod = irr.iter().fold(PolyGF::one(f9.clone()), |a, g| a.mul(g));
        let f = factor_poly(&prod).unwrap();
        assert_eq!(f.iter().map(|(g, _)| g.clone()).collect::<Vec<_>>(), irr);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn arb_pair() -> impl Strategy<Value = (PolyGF, PolyGF)> {
            prop::sample::select(vec![2u64, 3, 4, 5, 8, 9]).prop_flat_map(|q| {
                let field = field_of_order(q).unwrap();
                let coeffs = || prop::collection::vec(0..q as u32, 1..7);
                (coeffs(), coeffs())
                    .prop_map(move |(a, b)| (PolyGF::new(field.clone(), a), PolyGF::new(field.clone(), b)))
            })
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(64))]

            #[test]
            fn factorization_multiplies_back((f, g) in arb_pair()) {
                prop_assume!(!f.is_zero() && !g.is_zero());
                let field = f.field().clone();
                let ff = factor_poly(&f).unwrap();
                let fg = factor_poly(&g).unwrap();
                prop_assert_eq!(expand(&ff, &field), f.monic());
                for (h, _) in &ff {
                    prop_assert!(h.is_irreducible().unwrap() && h.is_monic());
                }
                let mut merged: std::collections::BTreeMap<PolyGF, usize> = Default::default();
                for (h, m) in ff.iter().chain(fg.iter()) {
                    *merged.entry(h.clone()).or_default() += m;
                }
                let fgf = factor_poly(&f.mul(&g)).unwrap();
                prop_assert_eq!(fgf, merged.into_iter().collect::<Vec<_>>());
            }
        }
    }
}

//! Finite fields GF(p^l) and tower extensions GF(q^d).
//!
//! Elements are `u32` codes: the coefficient vector `c` over the coefficient
//! field (the prime field, or the `base` of a tower) is encoded as
//! `sum c[i] * |coef|^i`. Because every radix in a tower is a power of `p`,
//! the base-`p` digits of a code are the flattened prime-field coordinates,
//! so addition is always digit-wise mod `p`.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::matrix::MatrixGF;
use crate::poly::PolyGF;

/// Fields at or below this order get exp/log multiplication tables.
const TABLE_LIMIT: u32 = 1 << 20;
/// Largest field order representable by `u32` codes with headroom for products.
const ORDER_LIMIT: u64 = 1 << 31;

#[derive(Clone)]
pub struct FieldSpec(Arc<FieldInner>);

struct FieldInner {
    p: u32,
    ell: u32,
    modulus: Vec<u32>,
    base: Option<FieldSpec>,
    order: u32,
    coef_order: u32,
    degree: usize,
    tables: Option<LogTables>,
}

struct LogTables {
    exp: Vec<u32>,
    log: Vec<u32>,
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Splits `q = p^l`, returning `(p, l)`.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2u64;
    while !q.is_multiple_of(p) {
        p += 1;
    }
    let (mut r, mut l) = (q, 0u32);
    while r % p == 0 {
        r /= p;
        l += 1;
    }
    (r == 1).then_some((p, l))
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub fn make_prime_field(p: u64) -> Result<FieldSpec> {
    if !is_prime(p) {
        return Err(Error::NonPrimeCharacteristic(p));
    }
    if p >= ORDER_LIMIT {
        return Err(Error::InvalidField(format!("prime {p} too large")));
    }
    let p = p as u32;
    Ok(FieldSpec(Arc::new(FieldInner {
        p,
        ell: 1,
        modulus: vec![0, 1],
        base: None,
        order: p,
        coef_order: p,
        degree: 1,
        tables: None,
    })))
}

/// GF(q) for a prime power `q`, built as the canonical extension of GF(p).
pub fn field_of_order(q: u64) -> Result<FieldSpec> {
    let (p, l) = prime_power(q).ok_or(Error::NotPrimePower(q))?;
    make_extension(&make_prime_field(p)?, l as usize)
}

/// `base[x]/(f)` with `f` the smallest monic irreducible of degree `d`,
/// ordered by the integer code `sum f_i |base|^i`.
pub fn make_extension(base: &FieldSpec, d: usize) -> Result<FieldSpec> {
    if d == 0 {
        return Err(Error::InvalidInput("extension degree must be positive".into()));
    }
    if d == 1 {
        return Ok(base.clone());
    }
    let q = base.order() as u64;
    let size = q
        .checked_pow(d as u32)
        .filter(|&s| s < ORDER_LIMIT)
        .ok_or_else(|| Error::InvalidField(format!("GF({q}^{d}) exceeds the supported field size")))?;
    for low in 0..size {
        let mut coeffs = digits(low, q, d);
        coeffs.push(1);
        let f = PolyGF::new(base.clone(), coeffs);
        if f.is_irreducible()? {
            return FieldSpec::with_modulus(base, f.coeffs().to_vec());
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

fn digits(mut v: u64, radix: u64, len: usize) -> Vec<u32> {
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        out.push((v % radix) as u32);
        v /= radix;
    }
    out
}

impl FieldSpec {
    /// `base[x]/(modulus)`; the modulus must be monic and irreducible over `base`.
    pub fn with_modulus(base: &FieldSpec, modulus: Vec<u32>) -> Result<FieldSpec> {
        let f = PolyGF::new(base.clone(), modulus.clone());
        if f.coeffs() != modulus.as_slice() || !f.is_monic() {
            return Err(Error::InvalidField("modulus must be monic with reduced coefficients".into()));
        }
        let degree = f.degree().unwrap_or(0);
        if degree == 0 {
            return Err(Error::InvalidField("modulus must have positive degree".into()));
        }
        if degree == 1 {
            if base.is_prime_field() && modulus == [0, 1] {
                return Ok(base.clone());
            }
            return Err(Error::InvalidField("degree-1 moduli other than x are not supported".into()));
        }
        if !f.is_irreducible()? {
            return Err(Error::InvalidField(format!("modulus {f} is reducible")));
        }
        let order = (base.order() as u64)
            .checked_pow(degree as u32)
            .filter(|&s| s < ORDER_LIMIT)
            .ok_or_else(|| Error::InvalidField("field too large".into()))? as u32;
        let mut inner = FieldInner {
            p: base.p(),
            ell: base.ell() * degree as u32,
            modulus,
            base: Some(base.clone()),
            order,
            coef_order: base.order(),
            degree,
            tables: None,
        };
        if order <= TABLE_LIMIT {
            inner.tables = Some(LogTables::build(&inner));
        }
        Ok(FieldSpec(Arc::new(inner)))
    }

    pub fn p(&self) -> u32 {
        self.0.p
    }

    /// Degree over the prime field.
    pub fn ell(&self) -> u32 {
        self.0.ell
    }

    pub fn order(&self) -> u32 {
        self.0.order
    }

    /// Degree of the modulus, i.e. the degree over the coefficient field.
    pub fn degree(&self) -> usize {
        self.0.degree
    }

    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    /// The field of modulus coefficients; `None` for a prime field.
    pub fn base(&self) -> Option<&FieldSpec> {
        self.0.base.as_ref()
    }

    pub fn coefficient_field(&self) -> FieldSpec {
        self.0.base.clone().unwrap_or_else(|| self.clone())
    }

    pub fn is_prime_field(&self) -> bool {
        self.0.base.is_none()
    }

    pub fn elem(&self, code: u32) -> FieldElem {
        debug_assert!(code < self.order());
        FieldElem { field: self.clone(), code }
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElem> + '_ {
        (0..self.order()).map(move |c| self.elem(c))
    }

    /// Coefficient vector of a code over the coefficient field.
    pub fn coeffs_of(&self, code: u32) -> Vec<u32> {
        if self.is_prime_field() {
            return vec![code];
        }
        digits(code as u64, self.0.coef_order as u64, self.0.degree)
    }

    pub fn code_of(&self, coeffs: &[u32]) -> Result<u32> {
        if coeffs.len() != self.0.degree {
            return Err(Error::InvalidInput(format!(
                "expected {} coefficients, got {}",
                self.0.degree,
                coeffs.len()
            )));
        }
        let r = self.0.coef_order as u64;
        let mut code = 0u64;
        for &c in coeffs.iter().rev() {
            if c as u64 >= r {
                return Err(Error::InvalidInput(format!("coefficient {c} out of range")));
            }
            code = code * r + c as u64;
        }
        Ok(code as u32)
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        let p = self.0.p;
        if p == 2 {
            return a ^ b;
        }
        if self.0.base.is_none() {
            let s = a + b;
            return if s >= p { s - p } else { s };
        }
        let (mut a, mut b, mut pw, mut out) = (a, b, 1u32, 0u32);
        while a > 0 || b > 0 {
            let d = (a % p + b % p) % p;
            out += d * pw;
            pw = pw.wrapping_mul(p);
            a /= p;
            b /= p;
        }
        out
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        let p = self.0.p;
        if p == 2 {
            return a;
        }
        if self.0.base.is_none() {
            return if a == 0 { 0 } else { p - a };
        }
        let (mut a, mut pw, mut out) = (a, 1u32, 0u32);
        while a > 0 {
            out += ((p - a % p) % p) * pw;
            pw = pw.wrapping_mul(p);
            a /= p;
        }
        out
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        if self.0.base.is_none() {
            return ((a as u64 * b as u64) % self.0.p as u64) as u32;
        }
        if let Some(t) = &self.0.tables {
            let m = self.0.order - 1;
            let s = t.log[a as usize] + t.log[b as usize];
            return t.exp[(if s >= m { s - m } else { s }) as usize];
        }
        self.0.poly_mul(a, b)
    }

    pub fn pow(&self, a: u32, mut e: u128) -> u32 {
        let (mut base, mut acc) = (a, 1u32);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: u32) -> Option<u32> {
        if a == 0 {
            return None;
        }
        if let Some(t) = &self.0.tables {
            let m = self.0.order - 1;
            return Some(t.exp[((m - t.log[a as usize]) % m) as usize]);
        }
        Some(self.pow(a, self.0.order as u128 - 2))
    }

    pub fn frobenius(&self, a: u32) -> u32 {
        self.pow(a, self.0.p as u128)
    }

    /// The integer `k` reduced into the prime subfield.
    pub fn from_int(&self, k: i64) -> u32 {
        k.rem_euclid(self.0.p as i64) as u32
    }

    pub fn same(&self, other: &FieldSpec) -> bool {
        self == other
    }
}

impl FieldInner {
    fn coef(&self) -> &FieldSpec {
        self.base.as_ref().expect("extension field")
    }

    fn poly_mul(&self, a: u32, b: u32) -> u32 {
        let k = self.coef();
        let r = self.coef_order as u64;
        let da = digits(a as u64, r, self.degree);
        let db = digits(b as u64, r, self.degree);
        let mut prod = vec![0u32; 2 * self.degree - 1];
        for (i, &x) in da.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = k.add(prod[i + j], k.mul(x, y));
            }
        }
        for top in (self.degree..prod.len()).rev() {
            let c = prod[top];
            if c == 0 {
                continue;
            }
            for (i, &m) in self.modulus[..self.degree].iter().enumerate() {
                let t = top - self.degree + i;
                prod[t] = k.sub(prod[t], k.mul(c, m));
            }
            prod[top] = 0;
        }
        let mut code = 0u64;
        for &c in prod[..self.degree].iter().rev() {
            code = code * r + c as u64;
        }
        code as u32
    }

    fn poly_pow(&self, a: u32, mut e: u64) -> u32 {
        let (mut base, mut acc) = (a, 1u32);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.poly_mul(acc, base);
            }
            base = self.poly_mul(base, base);
            e >>= 1;
        }
        acc
    }
}

impl LogTables {
    fn build(f: &FieldInner) -> Self {
        let m = f.order as u64 - 1;
        let factors = prime_factors(m);
        let gen = (2..f.order)
            .find(|&c| factors.iter().all(|&r| f.poly_pow(c, m / r) != 1))
            .unwrap_or(1);
        let mut exp = Vec::with_capacity(m as usize);
        let mut log = vec![0u32; f.order as usize];
        let mut x = 1u32;
        for i in 0..m as u32 {
            exp.push(x);
            log[x as usize] = i;
            x = f.poly_mul(x, gen);
        }
        LogTables { exp, log }
    }
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p && self.0.modulus == other.0.modulus && self.0.base == other.0.base)
    }
}

impl Eq for FieldSpec {}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self.order())
    }
}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.base() {
            None => write!(f, "GF({})", self.p()),
            Some(b) => write!(f, "{:?}[x]/({:?})", b, self.modulus()),
        }
    }
}

/// An element of a [`FieldSpec`].
#[derive(Clone, PartialEq, Eq)]
pub struct FieldElem {
    field: FieldSpec,
    code: u32,
}

impl FieldElem {
    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn code(&self) -> u32 {
        self.code
    }

    pub fn coeffs(&self) -> Vec<u32> {
        self.field.coeffs_of(self.code)
    }

    pub fn is_zero(&self) -> bool {
        self.code == 0
    }

    pub fn inv(&self) -> Option<FieldElem> {
        self.field.inv(self.code).map(|c| self.field.elem(c))
    }

    pub fn pow(&self, e: u128) -> FieldElem {
        self.field.elem(self.field.pow(self.code, e))
    }

    pub fn frobenius(&self) -> FieldElem {
        self.field.elem(self.field.frobenius(self.code))
    }
}

impl fmt::Debug for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.code)
    }
}

macro_rules! elem_binop {
    ($tr:ident, $method:ident, $op:ident) => {
        impl std::ops::$tr for &FieldElem {
            type Output = FieldElem;
            fn $method(self, rhs: &FieldElem) -> FieldElem {
                assert!(self.field == rhs.field, "field mismatch");
                self.field.elem(self.field.$op(self.code, rhs.code))
            }
        }
        impl std::ops::$tr for FieldElem {
            type Output = FieldElem;
            fn $method(self, rhs: FieldElem) -> FieldElem {
                (&self).$method(&rhs)
            }
        }
    };
}

elem_binop!(Add, add, add);
elem_binop!(Sub, sub, sub);
elem_binop!(Mul, mul, mul);

impl std::ops::Neg for &FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        self.field.elem(self.field.neg(self.code))
    }
}

/// Embeds an element of the coefficient field of `ext` as a constant.
pub fn embed(x: &FieldElem, ext: &FieldSpec) -> Result<FieldElem> {
    if x.field() == ext {
        return Ok(x.clone());
    }
    if ext.base() != Some(x.field()) {
        return Err(Error::FieldMismatch);
    }
    Ok(ext.elem(x.code()))
}

/// Trace of `x` down to `over`, which must be `x`'s field or lie below it in
/// the tower. One tower step is the Frobenius sum `sum_j x^(|K|^j)`.
pub fn field_trace(x: &FieldElem, over: &FieldSpec) -> Result<FieldElem> {
    let e = x.field();
    if e == over {
        return Ok(x.clone());
    }
    let k = e.base().ok_or(Error::FieldMismatch)?;
    let q = k.order() as u128;
    let mut acc = 0u32;
    let mut y = x.code();
    for _ in 0..e.degree() {
        acc = e.add(acc, y);
        y = e.pow(y, q);
    }
    debug_assert!(acc < k.order(), "trace must land in the coefficient field");
    field_trace(&k.elem(acc), over)
}

/// Multiplication-by-`eta` matrices of an extension over its coefficient
/// field in the power basis `1, x, ..., x^(d-1)`.
#[derive(Clone, Debug)]
pub struct RegularRepresentation {
    ext: FieldSpec,
    over: FieldSpec,
}

pub fn regular_representation(ext: &FieldSpec, over: &FieldSpec) -> Result<RegularRepresentation> {
    if ext != over && ext.base() != Some(over) {
        return Err(Error::FieldMismatch);
    }
    Ok(RegularRepresentation { ext: ext.clone(), over: over.clone() })
}

impl RegularRepresentation {
    pub fn dim(&self) -> usize {
        if self.ext == self.over {
            1
        } else {
            self.ext.degree()
        }
    }

    pub fn ext(&self) -> &FieldSpec {
        &self.ext
    }

    /// Column `j` holds the coordinates of `eta * x^j`.
    pub fn apply(&self, eta: &FieldElem) -> Result<MatrixGF> {
        if eta.field() != &self.ext {
            return Err(Error::FieldMismatch);
        }
        let d = self.dim();
        if d == 1 && self.ext == self.over {
            return Ok(MatrixGF::from_codes(self.over.clone(), 1, vec![eta.code()]));
        }
        let q = self.over.order();
        let mut entries = vec![0u32; d * d];
        let mut basis = 1u32;
        for j in 0..d {
            let prod = self.ext.mul(eta.code(), basis);
            for (i, c) in self.ext.coeffs_of(prod).into_iter().enumerate() {
                entries[i * d + j] = c;
            }
            basis = self.ext.mul(basis, q);
        }
        Ok(MatrixGF::from_codes(self.over.clone(), d, entries))
    }

    /// `rho(x^j)` for `j < d`, a basis of the image.
    pub fn power_basis_images(&self) -> Result<Vec<MatrixGF>> {
        let d = self.dim();
        if d == 1 {
            return Ok(vec![MatrixGF::identity(self.over.clone(), 1)]);
        }
        let x = self.over.order();
        let mut out = Vec::with_capacity(d);
        let mut cur = 1u32;
        for _ in 0..d {
            out.push(self.apply(&self.ext.elem(cur))?);
            cur = self.ext.mul(cur, x);
        }
        Ok(out)
    }
}

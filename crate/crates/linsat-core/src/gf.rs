//! Exact arithmetic in the finite field `F_q` for prime powers `q = p^tau`.
//!
//! Elements are encoded as integers in `[0, q)`: the base-`p` digits of the
//! encoding are the polynomial-basis coefficients, constant term first. For
//! prime `q` (`tau = 1`) the encoding is the residue itself, so `0` is always
//! the additive and `1` the multiplicative identity.
//!
//! Extension fields are reduced by the *canonical* modulus: the
//! lexicographically smallest monic irreducible polynomial of degree `tau`
//! over `F_p`, where coefficient sequences are compared from the constant
//! term up. This makes [`FieldSpec::from_order`] deterministic, so two specs
//! with the same order are interchangeable.

use thiserror::Error;

/// Largest supported field order.
pub const MAX_ORDER: u32 = 1 << 16;

/// Orders up to this bound precompute full multiplication and inverse tables.
const TABLE_LIMIT: u32 = 256;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("{0} is not a prime power")]
    NotAPrimePower(u32),
    #[error("field order {0} exceeds the supported maximum {MAX_ORDER}")]
    UnsupportedOrder(u32),
    #[error("division by zero")]
    DivisionByZero,
    #[error("value {value} is not an element of a field of order {q}")]
    OutOfRange { value: u32, q: u32 },
}

/// An element of `F_q`, identified by its canonical integer encoding.
///
/// The wrapped value is only meaningful relative to a [`FieldSpec`]; use
/// [`FieldSpec::elem`] or [`FieldSpec::try_elem`] to construct one in range.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct FieldElement(u32);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    pub(crate) fn from_raw(value: u32) -> FieldElement {
        FieldElement(value)
    }

    pub fn value(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl std::fmt::Display for FieldElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// The finite field `F_q` with `q = p^tau`.
///
/// Immutable after construction; all operations are pure functions of their
/// inputs, so a spec can be shared freely across threads.
#[derive(Debug, Clone)]
pub struct FieldSpec {
    q: u32,
    p: u32,
    tau: u32,
    /// Reduction modulus, constant term first, monic (length `tau + 1`).
    /// Empty for prime fields.
    modulus: Vec<u32>,
    mul_table: Option<Box<[u32]>>,
    inv_table: Option<Box<[u32]>>,
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        // Construction is canonical, so the order determines everything.
        self.q == other.q
    }
}

impl Eq for FieldSpec {}

impl FieldSpec {
    /// Builds the canonical field of order `q`.
    pub fn from_order(q: u32) -> Result<FieldSpec, FieldError> {
        if q < 2 {
            return Err(FieldError::NotAPrimePower(q));
        }
        if q > MAX_ORDER {
            return Err(FieldError::UnsupportedOrder(q));
        }
        let (p, tau) = prime_power_decomposition(q).ok_or(FieldError::NotAPrimePower(q))?;
        let modulus = if tau == 1 {
            Vec::new()
        } else {
            canonical_modulus(p, tau)
        };
        let mut spec = FieldSpec {
            q,
            p,
            tau,
            modulus,
            mul_table: None,
            inv_table: None,
        };
        if q <= TABLE_LIMIT {
            spec.build_tables();
        }
        Ok(spec)
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn tau(&self) -> u32 {
        self.tau
    }

    /// Reduction modulus (constant term first, monic), or `None` for prime fields.
    pub fn modulus(&self) -> Option<&[u32]> {
        if self.tau == 1 {
            None
        } else {
            Some(&self.modulus)
        }
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement::ZERO
    }

    pub fn one(&self) -> FieldElement {
        FieldElement::ONE
    }

    /// Wraps `value` as an element, panicking if it is out of range.
    pub fn elem(&self, value: u32) -> FieldElement {
        assert!(value < self.q, "value {} out of range for F_{}", value, self.q);
        FieldElement(value)
    }

    pub fn try_elem(&self, value: u32) -> Result<FieldElement, FieldError> {
        if value < self.q {
            Ok(FieldElement(value))
        } else {
            Err(FieldError::OutOfRange { value, q: self.q })
        }
    }

    /// All `q` elements in encoding order `0..q`.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.q).map(FieldElement)
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if self.tau == 1 {
            let s = a.0 + b.0;
            FieldElement(if s >= self.q { s - self.q } else { s })
        } else {
            let p = self.p;
            let (mut x, mut y) = (a.0, b.0);
            let mut out = 0;
            let mut shift = 1;
            for _ in 0..self.tau {
                let d = (x % p + y % p) % p;
                out += d * shift;
                shift *= p;
                x /= p;
                y /= p;
            }
            FieldElement(out)
        }
    }

    pub fn neg(&self, a: FieldElement) -> FieldElement {
        if self.tau == 1 {
            FieldElement(if a.0 == 0 { 0 } else { self.q - a.0 })
        } else {
            let p = self.p;
            let mut x = a.0;
            let mut out = 0;
            let mut shift = 1;
            for _ in 0..self.tau {
                let d = x % p;
                out += if d == 0 { 0 } else { p - d } * shift;
                shift *= p;
                x /= p;
            }
            FieldElement(out)
        }
    }

    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if let Some(table) = &self.mul_table {
            return FieldElement(table[(a.0 * self.q + b.0) as usize]);
        }
        if self.tau == 1 {
            FieldElement((u64::from(a.0) * u64::from(b.0) % u64::from(self.p)) as u32)
        } else {
            self.mul_poly(a, b)
        }
    }

    /// Multiplicative inverse; errors on zero.
    pub fn inv(&self, a: FieldElement) -> Result<FieldElement, FieldError> {
        if a.0 == 0 {
            return Err(FieldError::DivisionByZero);
        }
        if let Some(table) = &self.inv_table {
            return Ok(FieldElement(table[a.0 as usize]));
        }
        // a^(q-2) = a^(-1) since the nonzero elements form a group of order q-1.
        Ok(self.pow(a, u64::from(self.q) - 2))
    }

    pub fn pow(&self, a: FieldElement, mut e: u64) -> FieldElement {
        let mut base = a;
        let mut acc = FieldElement::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    fn mul_poly(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        let p = self.p;
        let tau = self.tau as usize;
        let mut da = [0u32; 16];
        let mut db = [0u32; 16];
        decompose(a.0, p, &mut da[..tau]);
        decompose(b.0, p, &mut db[..tau]);

        let mut prod = [0u32; 31];
        for (i, &x) in da[..tau].iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in db[..tau].iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % p;
            }
        }
        // Reduce by the monic modulus.
        for i in (tau..2 * tau - 1).rev() {
            let lead = prod[i];
            if lead == 0 {
                continue;
            }
            for (j, &c) in self.modulus.iter().enumerate() {
                let idx = i - tau + j;
                prod[idx] = (prod[idx] + (p - c % p) % p * lead) % p;
            }
        }
        let mut out = 0;
        let mut shift = 1;
        for &d in &prod[..tau] {
            out += d * shift;
            shift *= p;
        }
        FieldElement(out)
    }

    fn build_tables(&mut self) {
        let q = self.q as usize;
        let mut mul = vec![0u32; q * q];
        for a in 0..self.q {
            for b in a..self.q {
                let v = if self.tau == 1 {
                    (u64::from(a) * u64::from(b) % u64::from(self.p)) as u32
                } else {
                    self.mul_poly(FieldElement(a), FieldElement(b)).0
                };
                mul[(a * self.q + b) as usize] = v;
                mul[(b * self.q + a) as usize] = v;
            }
        }
        let mut inv = vec![0u32; q];
        for a in 1..self.q {
            for b in 1..self.q {
                if mul[(a * self.q + b) as usize] == 1 {
                    inv[a as usize] = b;
                    break;
                }
            }
        }
        self.mul_table = Some(mul.into_boxed_slice());
        self.inv_table = Some(inv.into_boxed_slice());
    }
}

fn decompose(mut value: u32, p: u32, out: &mut [u32]) {
    for d in out.iter_mut() {
        *d = value % p;
        value /= p;
    }
}

/// Returns `(p, tau)` with `q = p^tau` and `p` prime, or `None`.
fn prime_power_decomposition(q: u32) -> Option<(u32, u32)> {
    let mut p = 0;
    for cand in 2..=q {
        if cand * cand > q {
            p = q; // q itself is prime
            break;
        }
        if q.is_multiple_of(cand) {
            p = cand;
            break;
        }
    }
    let mut rest = q;
    let mut tau = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        tau += 1;
    }
    if rest == 1 {
        Some((p, tau))
    } else {
        None
    }
}

/// Lexicographically smallest monic irreducible polynomial of degree `tau`
/// over `F_p`, coefficients compared from the constant term up. Returned
/// constant term first, including the leading 1.
fn canonical_modulus(p: u32, tau: u32) -> Vec<u32> {
    let tau = tau as usize;
    let mut coeffs = vec![0u32; tau + 1];
    coeffs[tau] = 1;
    // Candidates in lex order: c_0 is the most significant comparison digit.
    // c_0 = 0 would make the polynomial divisible by x, so start at c_0 = 1.
    let total = (p as u64).pow(tau as u32);
    let mut k = total / u64::from(p); // first candidate with c_0 = 1
    while k < total {
        let mut rem = k;
        for i in (0..tau).rev() {
            coeffs[i] = (rem % u64::from(p)) as u32;
            rem /= u64::from(p);
        }
        if is_irreducible(&coeffs, p) {
            return coeffs;
        }
        k += 1;
    }
    unreachable!("an irreducible polynomial of every degree exists over F_p");
}

/// Trial division by every monic polynomial of degree 1..=tau/2.
fn is_irreducible(coeffs: &[u32], p: u32) -> bool {
    let tau = coeffs.len() - 1;
    if tau == 1 {
        return true;
    }
    let mut divisor = Vec::new();
    for d in 1..=tau / 2 {
        let count = (p as u64).pow(d as u32);
        for k in 0..count {
            divisor.clear();
            let mut rem = k;
            for _ in 0..d {
                divisor.push((rem % u64::from(p)) as u32);
                rem /= u64::from(p);
            }
            divisor.push(1);
            if poly_rem_is_zero(coeffs, &divisor, p) {
                return false;
            }
        }
    }
    true
}

/// Whether the monic `divisor` divides `num` over `F_p`.
fn poly_rem_is_zero(num: &[u32], divisor: &[u32], p: u32) -> bool {
    let mut rem: Vec<u32> = num.to_vec();
    let dd = divisor.len() - 1;
    for i in (dd..rem.len()).rev() {
        let lead = rem[i];
        if lead == 0 {
            continue;
        }
        for (j, &c) in divisor.iter().enumerate() {
            let idx = i - dd + j;
            rem[idx] = (rem[idx] + (p - c % p) % p * lead) % p;
        }
    }
    rem[..dd].iter().all(|&c| c == 0)
}

//! Exact arithmetic in the Galois ring `GR(p^r, s) = Z_{p^r}[x] / (f)`.
//!
//! The modulus `f` is the smallest primitive polynomial of degree `s` over
//! `F_p` (candidates ordered by the integer whose base-`p` digits are the
//! non-leading coefficients, constant term least significant), with its
//! coefficients read verbatim as residues mod `p^r`. Elements are coefficient
//! vectors of length `s`, low degree first.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigUint;
use num_integer::Integer;
use rand::Rng;

use crate::arith::{factorize, is_prime, mul_mod};
use crate::error::{Error, Result};
use crate::linalg::{self, ChainModulus};

/// Upper bound on the number of candidate polynomials tried by the modulus search.
const PRIMITIVE_SEARCH_BOUND: u64 = 10_000_000;

/// An element of a Galois ring: `s` residues mod `p^r`, low degree first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GrElement(Vec<u64>);

impl GrElement {
    pub fn coeffs(&self) -> &[u64] {
        &self.0
    }

    pub fn into_coeffs(self) -> Vec<u64> {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }
}

impl fmt::Display for GrElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// The ring `GR(p^r, s)` together with its fixed modulus and cached Frobenius data.
#[derive(Debug)]
pub struct GaloisRing {
    p: u64,
    r: u32,
    s: u32,
    zm: ChainModulus,
    /// Monic modulus, `s + 1` coefficients, low degree first.
    modulus: Vec<u64>,
    /// `p^s`, the size of the residue field.
    residue_size: u64,
    xi: GrElement,
    /// `sigma^k(x)` for `k in 0..s`, where `sigma` is the Frobenius automorphism.
    frobenius_of_x: Vec<GrElement>,
}

impl PartialEq for GaloisRing {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.r == other.r && self.s == other.s && self.modulus == other.modulus
    }
}

impl Eq for GaloisRing {}

impl fmt::Display for GaloisRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GR({}^{},{})", self.p, self.r, self.s)
    }
}

impl GaloisRing {
    /// Builds `GR(p^r, s)` with the canonical primitive modulus.
    pub fn new(p: u64, r: u32, s: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if r == 0 || s == 0 {
            return Err(Error::InvalidParameter(format!(
                "r and s must be positive (r = {r}, s = {s})"
            )));
        }
        let char_ok = p.checked_pow(r).is_some_and(|n| n < (1u64 << 32));
        if !char_ok {
            return Err(Error::InvalidParameter(format!(
                "characteristic {p}^{r} exceeds 2^32"
            )));
        }
        let residue_size = p
            .checked_pow(s)
            .filter(|&q| q < (1u64 << 63))
            .ok_or_else(|| {
                Error::InvalidParameter(format!("residue field of size {p}^{s} exceeds 2^63"))
            })?;
        let base = find_primitive_polynomial(p, s)?;
        let mut modulus = base;
        modulus.push(1);
        Self::with_modulus(p, r, s, modulus, residue_size)
    }

    fn with_modulus(p: u64, r: u32, s: u32, modulus: Vec<u64>, residue_size: u64) -> Result<Self> {
        let zm = ChainModulus::new(p, r);
        let mut ring = Self {
            p,
            r,
            s,
            zm,
            modulus,
            residue_size,
            xi: GrElement(vec![0; s as usize]),
            frobenius_of_x: Vec::new(),
        };
        let x = ring.x();
        ring.xi = ring.teichmuller_lift(&x);
        ring.frobenius_of_x = (0..s).map(|k| ring.frobenius_by_digits(&x, k)).collect();
        Ok(ring)
    }

    /// Shared handle, the usual way rings are passed around.
    pub fn shared(p: u64, r: u32, s: u32) -> Result<Arc<Self>> {
        Self::new(p, r, s).map(Arc::new)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn s(&self) -> u32 {
        self.s
    }

    /// `p^r`.
    pub fn characteristic(&self) -> u64 {
        self.zm.modulus()
    }

    pub fn chain_modulus(&self) -> &ChainModulus {
        &self.zm
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    /// `p^s`.
    pub fn residue_field_size(&self) -> u64 {
        self.residue_size
    }

    /// `p^(rs)`.
    pub fn size(&self) -> BigUint {
        BigUint::from(self.p).pow(self.r * self.s)
    }

    /// `p^(rs) - p^((r-1)s)`.
    pub fn unit_count(&self) -> BigUint {
        self.size() - BigUint::from(self.p).pow((self.r - 1) * self.s)
    }

    pub fn zero(&self) -> GrElement {
        GrElement(vec![0; self.s as usize])
    }

    pub fn one(&self) -> GrElement {
        self.from_int(1)
    }

    pub fn from_int(&self, v: i64) -> GrElement {
        let mut c = vec![0; self.s as usize];
        c[0] = v.rem_euclid(self.characteristic() as i64) as u64;
        GrElement(c)
    }

    /// The class of `x`, a root of the modulus.
    pub fn x(&self) -> GrElement {
        if self.s == 1 {
            // x = -f_0
            GrElement(vec![self.zm.neg(self.modulus[0])])
        } else {
            let mut c = vec![0; self.s as usize];
            c[1] = 1;
            GrElement(c)
        }
    }

    /// Validating constructor; coefficients are reduced mod `p^r`.
    pub fn element(&self, coeffs: &[u64]) -> Result<GrElement> {
        if coeffs.len() != self.s as usize {
            return Err(Error::RingMismatch(format!(
                "{} coefficients supplied for {self}",
                coeffs.len()
            )));
        }
        let n = self.characteristic();
        Ok(GrElement(coeffs.iter().map(|&c| c % n).collect()))
    }

    /// True when `a` has the shape of an element of this ring.
    pub fn contains(&self, a: &GrElement) -> bool {
        a.0.len() == self.s as usize && a.0.iter().all(|&c| c < self.characteristic())
    }

    fn check(&self, a: &GrElement) -> Result<()> {
        if self.contains(a) {
            Ok(())
        } else {
            Err(Error::RingMismatch(format!("element [{a}] does not belong to {self}")))
        }
    }

    #[inline]
    fn assert_same(&self, a: &GrElement) {
        assert_eq!(a.0.len(), self.s as usize, "element does not belong to {self}");
    }

    pub fn add(&self, a: &GrElement, b: &GrElement) -> GrElement {
        self.assert_same(a);
        self.assert_same(b);
        GrElement(a.0.iter().zip(&b.0).map(|(&x, &y)| self.zm.add(x, y)).collect())
    }

    pub fn sub(&self, a: &GrElement, b: &GrElement) -> GrElement {
        self.assert_same(a);
        self.assert_same(b);
        GrElement(a.0.iter().zip(&b.0).map(|(&x, &y)| self.zm.sub(x, y)).collect())
    }

    pub fn neg(&self, a: &GrElement) -> GrElement {
        GrElement(a.0.iter().map(|&x| self.zm.neg(x)).collect())
    }

    pub fn scale_int(&self, a: &GrElement, k: u64) -> GrElement {
        GrElement(a.0.iter().map(|&x| self.zm.mul(x, k)).collect())
    }

    pub fn mul(&self, a: &GrElement, b: &GrElement) -> GrElement {
        self.assert_same(a);
        self.assert_same(b);
        GrElement(self.mul_slices(&a.0, &b.0))
    }

    /// Add and multiply that report a ring mismatch instead of panicking.
    pub fn checked_add(&self, a: &GrElement, b: &GrElement) -> Result<GrElement> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.add(a, b))
    }

    pub fn checked_mul(&self, a: &GrElement, b: &GrElement) -> Result<GrElement> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.mul(a, b))
    }

    /// Product of two coefficient slices of length `s`.
    pub fn mul_slices(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let s = self.s as usize;
        let n = self.characteristic();
        if s == 1 {
            return vec![mul_mod(a[0], b[0], n)];
        }
        let mut wide = vec![0u128; 2 * s - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                wide[i + j] += x as u128 * y as u128;
            }
        }
        let mut prod: Vec<u64> = wide.into_iter().map(|w| (w % n as u128) as u64).collect();
        for k in (s..2 * s - 1).rev() {
            let c = prod[k];
            if c == 0 {
                continue;
            }
            for i in 0..s {
                let t = mul_mod(c, self.modulus[i], n);
                prod[k - s + i] = self.zm.sub(prod[k - s + i], t);
            }
        }
        prod.truncate(s);
        prod
    }

    pub fn pow(&self, a: &GrElement, mut e: u64) -> GrElement {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    pub fn pow_big(&self, a: &GrElement, e: &BigUint) -> GrElement {
        let mut acc = self.one();
        for i in (0..e.bits()).rev() {
            acc = self.mul(&acc, &acc);
            if e.bit(i) {
                acc = self.mul(&acc, a);
            }
        }
        acc
    }

    /// Coefficient-wise reduction mod `p`, i.e. the image in `F_{p^s}`.
    pub fn residue(&self, a: &GrElement) -> Vec<u64> {
        a.0.iter().map(|&c| c % self.p).collect()
    }

    pub fn is_unit(&self, a: &GrElement) -> bool {
        a.0.iter().any(|&c| c % self.p != 0)
    }

    /// Largest `v <= r` with `a` in `p^v GR`.
    pub fn valuation(&self, a: &GrElement) -> u32 {
        a.0.iter().map(|&c| self.zm.valuation(c)).min().unwrap_or(self.r)
    }

    pub fn inverse(&self, a: &GrElement) -> Option<GrElement> {
        if !self.is_unit(a) {
            return None;
        }
        // residue inverse a^(p^s - 2), then Newton steps b <- b (2 - a b)
        let mut b = self.pow(a, self.residue_size - 2);
        let two = self.from_int(2);
        for _ in 0..=self.r.ilog2() + 1 {
            let ab = self.mul(a, &b);
            b = self.mul(&b, &self.sub(&two, &ab));
        }
        debug_assert_eq!(self.mul(a, &b), self.one());
        Some(b)
    }

    /// Evaluates a polynomial with `Z_{p^r}` coefficients (low degree first) at `at`.
    pub fn eval_int_poly(&self, poly: &[u64], at: &GrElement) -> GrElement {
        let mut acc = self.zero();
        for &c in poly.iter().rev() {
            acc = self.mul(&acc, at);
            acc.0[0] = self.zm.add(acc.0[0], c % self.characteristic());
        }
        acc
    }

    fn pow_p_times(&self, a: &GrElement, times: u64) -> GrElement {
        let mut t = a.clone();
        for _ in 0..times {
            t = self.pow(&t, self.p);
        }
        t
    }

    /// The unique Teichmuller element with the same residue as `a`:
    /// `t -> t^(p^s)` applied `r - 1` times.
    pub fn teichmuller_lift(&self, a: &GrElement) -> GrElement {
        let mut t = a.clone();
        for _ in 1..self.r {
            t = self.pow_p_times(&t, self.s as u64);
        }
        t
    }

    pub fn is_teichmuller(&self, a: &GrElement) -> bool {
        self.pow_p_times(a, self.s as u64) == *a
    }

    /// `(a_0, ..., a_{r-1})` with Teichmuller digits and `a = sum a_i p^i`.
    pub fn teichmuller_digits(&self, a: &GrElement) -> Vec<GrElement> {
        self.assert_same(a);
        let mut rest = a.clone();
        let mut digits = Vec::with_capacity(self.r as usize);
        for i in 0..self.r {
            let pi = self.p.pow(i);
            let residue: Vec<u64> = rest.0.iter().map(|&c| (c / pi) % self.p).collect();
            let digit = self.teichmuller_lift(&GrElement(residue));
            rest = self.sub(&rest, &self.scale_int(&digit, pi));
            digits.push(digit);
        }
        debug_assert!(rest.is_zero());
        digits
    }

    pub fn from_digits(&self, digits: &[GrElement]) -> GrElement {
        digits.iter().enumerate().fold(self.zero(), |acc, (i, d)| {
            self.add(&acc, &self.scale_int(d, self.p.pow(i as u32)))
        })
    }

    /// `sum a_i^(p^k) p^i` computed from the Teichmuller digits.
    pub fn frobenius_by_digits(&self, a: &GrElement, k: u32) -> GrElement {
        let k = k % self.s;
        let digits: Vec<GrElement> = self
            .teichmuller_digits(a)
            .iter()
            .map(|d| self.pow_p_times(d, k as u64))
            .collect();
        self.from_digits(&digits)
    }

    /// The automorphism `sigma^k`; `k = s/2` gives the conjugation used by the
    /// Hermitian form. Evaluated as `a(sigma^k(x))`, which agrees with the
    /// digit-wise definition because `sigma^k` fixes `Z_{p^r}`.
    pub fn frobenius(&self, a: &GrElement, k: u32) -> GrElement {
        let k = k % self.s;
        if k == 0 {
            return a.clone();
        }
        self.eval_int_poly(&a.0, &self.frobenius_of_x[k as usize])
    }

    /// Conjugation `sigma^(s/2)`.
    pub fn bar(&self, a: &GrElement) -> Result<GrElement> {
        if !self.s.is_multiple_of(2) {
            return Err(Error::OddDegree(self.s));
        }
        Ok(self.frobenius(a, self.s / 2))
    }

    /// Generator of the Teichmuller set, of multiplicative order `p^s - 1`.
    pub fn teichmuller_generator(&self) -> &GrElement {
        &self.xi
    }

    /// `{0, 1, xi, ..., xi^(p^s - 2)}`.
    pub fn teichmuller_set(&self) -> Vec<GrElement> {
        let mut set = vec![self.zero()];
        let mut t = self.one();
        for _ in 0..self.residue_size - 1 {
            set.push(t.clone());
            t = self.mul(&t, &self.xi);
        }
        set
    }

    /// Primitive `m`-th root of unity `xi^((p^s - 1) / m)`.
    pub fn root_of_unity(&self, m: u64) -> Result<GrElement> {
        let order = self.residue_size - 1;
        if m == 0 || !order.is_multiple_of(m) {
            return Err(Error::InvalidParameter(format!(
                "{m} does not divide {}^{} - 1",
                self.p, self.s
            )));
        }
        Ok(self.pow(&self.xi, order / m))
    }

    /// All `p^(rs)` elements in coefficient order; only sensible for small rings.
    pub fn elements(&self) -> impl Iterator<Item = GrElement> + '_ {
        let n = self.characteristic();
        let s = self.s as usize;
        let total = n.checked_pow(self.s).expect("ring too large to enumerate");
        (0..total).map(move |mut code| {
            let mut c = vec![0; s];
            for slot in c.iter_mut() {
                *slot = code % n;
                code /= n;
            }
            GrElement(c)
        })
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> GrElement {
        let n = self.characteristic();
        GrElement((0..self.s).map(|_| rng.gen_range(0..n)).collect())
    }

    /// Parses the comma-separated coefficient format, e.g. `"3,1"`.
    /// Missing high coefficients are zero.
    pub fn parse_element(&self, text: &str) -> Result<GrElement> {
        let text = text.trim();
        let mut coeffs = Vec::new();
        if !text.is_empty() {
            for part in text.split(',') {
                let v: i64 = part
                    .trim()
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad coefficient `{part}` in `{text}`")))?;
                coeffs.push(v.rem_euclid(self.characteristic() as i64) as u64);
            }
        }
        if coeffs.len() > self.s as usize {
            return Err(Error::Parse(format!(
                "`{text}` has more than {} coefficients",
                self.s
            )));
        }
        coeffs.resize(self.s as usize, 0);
        Ok(GrElement(coeffs))
    }

    /// Human-readable modulus, e.g. `x^2 + x + 1`.
    pub fn modulus_string(&self) -> String {
        let mut terms = Vec::new();
        for (i, &c) in self.modulus.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => "x".to_string(),
                _ => format!("x^{i}"),
            };
            terms.push(match (c, i) {
                (_, 0) => c.to_string(),
                (1, _) => mono,
                _ => format!("{c}*{mono}"),
            });
        }
        terms.join(" + ")
    }
}

/// Parses `GR(p^r,s)`, e.g. `GR(2^2,2)`.
pub fn parse_ring_spec(text: &str) -> Result<(u64, u32, u32)> {
    let err = || Error::Parse(format!("expected `GR(p^r,s)`, got `{text}`"));
    let inner = text
        .trim()
        .strip_prefix("GR(")
        .and_then(|t| t.strip_suffix(')'))
        .ok_or_else(err)?;
    let (pr, s) = inner.split_once(',').ok_or_else(err)?;
    let (p, r) = pr.split_once('^').ok_or_else(err)?;
    let p = p.trim().parse().map_err(|_| err())?;
    let r = r.trim().parse().map_err(|_| err())?;
    let s = s.trim().parse().map_err(|_| err())?;
    Ok((p, r, s))
}

// --- polynomials over F_p, used only by the modulus search ---

fn fp_mulmod(a: &[u64], b: &[u64], f: &[u64], p: u64) -> Vec<u64> {
    // a, b of length s; f monic of length s + 1
    let s = f.len() - 1;
    let mut prod = vec![0u64; 2 * s - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + mul_mod(x, y, p)) % p;
        }
    }
    for k in (s..2 * s - 1).rev() {
        let c = prod[k];
        if c == 0 {
            continue;
        }
        for i in 0..s {
            prod[k - s + i] = (prod[k - s + i] + p - mul_mod(c, f[i], p)) % p;
        }
    }
    prod.truncate(s);
    prod
}

fn fp_x_pow(mut e: u64, f: &[u64], p: u64) -> Vec<u64> {
    let s = f.len() - 1;
    let mut base = vec![0u64; s];
    if s == 1 {
        base[0] = (p - f[0] % p) % p;
    } else {
        base[1] = 1;
    }
    let mut acc = vec![0u64; s];
    acc[0] = 1;
    while e > 0 {
        if e & 1 == 1 {
            acc = fp_mulmod(&acc, &base, f, p);
        }
        base = fp_mulmod(&base, &base, f, p);
        e >>= 1;
    }
    acc
}

/// The class of `x` has order `p^s - 1` modulo `f`; this also forces `f` irreducible.
fn is_primitive(f: &[u64], p: u64, order: u64, prime_factors: &[(u64, u32)]) -> bool {
    if f[0] == 0 {
        return false;
    }
    let s = f.len() - 1;
    let mut one = vec![0u64; s];
    one[0] = 1;
    if fp_x_pow(order, f, p) != one {
        return false;
    }
    prime_factors
        .iter()
        .all(|&(q, _)| fp_x_pow(order / q, f, p) != one)
}

/// Non-leading coefficients of the canonical primitive polynomial of degree `s`.
pub(crate) fn find_primitive_polynomial(p: u64, s: u32) -> Result<Vec<u64>> {
    let q = p.pow(s);
    let order = q - 1;
    let factors = if order > 1 { factorize(order) } else { Vec::new() };
    for k in 0..q.min(PRIMITIVE_SEARCH_BOUND) {
        let mut f = Vec::with_capacity(s as usize + 1);
        let mut rest = k;
        for _ in 0..s {
            f.push(rest % p);
            rest /= p;
        }
        f.push(1);
        if is_primitive(&f, p, order, &factors) {
            f.pop();
            return Ok(f);
        }
    }
    Err(Error::NoPrimitivePolynomial { p, degree: s })
}

/// The ring monomorphism `GR(p^r, s) -> GR(p^r, s*k)`.
///
/// It sends the class of `x` to the Hensel lift of a root of the source
/// modulus, chosen so that the source Teichmuller generator maps to the
/// smallest admissible power `xi_target^(c*j)`, `c = (p^(sk)-1)/(p^s-1)`.
#[derive(Debug, Clone)]
pub struct Embedding {
    source: Arc<GaloisRing>,
    target: Arc<GaloisRing>,
    image_of_x: GrElement,
    /// Target coordinates used to invert the map, and the inverse of that minor.
    pivot_rows: Vec<usize>,
    minor_inverse: Vec<Vec<u64>>,
}

impl Embedding {
    pub fn new(source: Arc<GaloisRing>, target: Arc<GaloisRing>) -> Result<Self> {
        if source.p != target.p || source.r != target.r {
            return Err(Error::RingMismatch(format!(
                "cannot embed {source} into {target}: characteristics differ"
            )));
        }
        if !target.s.is_multiple_of(source.s) {
            return Err(Error::InvalidParameter(format!(
                "cannot embed {source} into {target}: {} does not divide {}",
                source.s, target.s
            )));
        }
        let image_of_x = if *source == *target {
            target.x()
        } else {
            let root = Self::teichmuller_root(&source, &target)?;
            Self::hensel_root(&source.modulus, &target, root)?
        };

        // matrix columns are the coordinates of image_of_x^j
        let s = source.s as usize;
        let mut columns = Vec::with_capacity(s);
        let mut power = target.one();
        for _ in 0..s {
            columns.push(power.0.clone());
            power = target.mul(&power, &image_of_x);
        }
        let pivot_rows = independent_rows_mod_p(&columns, target.p).ok_or_else(|| {
            Error::Internal(format!("embedding {source} -> {target} is not injective"))
        })?;
        let minor: Vec<Vec<u64>> = pivot_rows
            .iter()
            .map(|&i| columns.iter().map(|col| col[i]).collect())
            .collect();
        let minor_inverse = linalg::invert(&target.zm, &minor)
            .ok_or_else(|| Error::Internal("singular embedding minor".into()))?;
        Ok(Self {
            source,
            target,
            image_of_x,
            pivot_rows,
            minor_inverse,
        })
    }

    /// Teichmuller element of the target whose residue is a root of the source modulus.
    fn teichmuller_root(source: &GaloisRing, target: &GaloisRing) -> Result<GrElement> {
        let small = source.residue_size - 1;
        let c = (target.residue_size - 1) / small;
        let step = target.pow(&target.xi, c);
        let mut tau = target.one();
        for j in 1..=small {
            tau = target.mul(&tau, &step);
            if j.gcd(&small) != 1 {
                continue;
            }
            let value = target.eval_int_poly(&source.modulus, &tau);
            if target.residue(&value).iter().all(|&v| v == 0) {
                return Ok(tau);
            }
        }
        Err(Error::Internal(format!(
            "no root of the {source} modulus inside {target}"
        )))
    }

    fn hensel_root(poly: &[u64], ring: &GaloisRing, start: GrElement) -> Result<GrElement> {
        let n = ring.characteristic();
        let derivative: Vec<u64> = poly
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| mul_mod(c, i as u64 % n, n))
            .collect();
        let mut y = start;
        for _ in 0..=ring.r {
            let value = ring.eval_int_poly(poly, &y);
            if value.is_zero() {
                return Ok(y);
            }
            let slope = ring.eval_int_poly(&derivative, &y);
            let inv = ring
                .inverse(&slope)
                .ok_or_else(|| Error::Internal("modulus is not separable".into()))?;
            y = ring.sub(&y, &ring.mul(&value, &inv));
        }
        if ring.eval_int_poly(poly, &y).is_zero() {
            Ok(y)
        } else {
            Err(Error::Internal("Hensel lifting did not converge".into()))
        }
    }

    pub fn source(&self) -> &Arc<GaloisRing> {
        &self.source
    }

    pub fn target(&self) -> &Arc<GaloisRing> {
        &self.target
    }

    pub fn apply(&self, a: &GrElement) -> GrElement {
        self.source.assert_same(a);
        self.target.eval_int_poly(&a.0, &self.image_of_x)
    }

    /// Preimage of `b`, or an error when `b` is outside the image.
    pub fn pull_back(&self, b: &GrElement) -> Result<GrElement> {
        self.target.check(b)?;
        let zm = &self.target.zm;
        let coeffs: Vec<u64> = self
            .minor_inverse
            .iter()
            .map(|row| {
                row.iter()
                    .zip(&self.pivot_rows)
                    .fold(0, |acc, (&m, &i)| zm.add(acc, zm.mul(m, b.0[i])))
            })
            .collect();
        let a = GrElement(coeffs);
        if self.apply(&a) != *b {
            return Err(Error::Internal(format!(
                "[{b}] is not in the image of {} inside {}",
                self.source, self.target
            )));
        }
        Ok(a)
    }
}

/// Indices of rows forming an invertible minor mod `p`, given the matrix as columns.
fn independent_rows_mod_p(columns: &[Vec<u64>], p: u64) -> Option<Vec<usize>> {
    // row-reduce the transpose (one row per column) and read off pivot positions
    let mut rows: Vec<Vec<u64>> = columns
        .iter()
        .map(|c| c.iter().map(|&x| x % p).collect())
        .collect();
    let width = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut next = 0;
    for col in 0..width {
        let Some(found) = (next..rows.len()).find(|&i| rows[i][col] != 0) else {
            continue;
        };
        rows.swap(next, found);
        let inv = crate::arith::inverse_mod(rows[next][col], p)?;
        let piv: Vec<u64> = rows[next].iter().map(|&x| mul_mod(x, inv, p)).collect();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != next && row[col] != 0 {
                let f = row[col];
                for (x, &y) in row.iter_mut().zip(&piv) {
                    *x = (*x + p - mul_mod(f, y, p)) % p;
                }
            }
        }
        rows[next] = piv;
        pivots.push(col);
        next += 1;
        if next == rows.len() {
            break;
        }
    }
    (pivots.len() == columns.len()).then_some(pivots)
}

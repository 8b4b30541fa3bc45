//! The group ring `GR(p^r, s)[G]`, its bilinear / sesquilinear forms, the
//! involutions `Y^g -> Y^{-g}`, and the splitting `GR[G] ~ GR[A][P]`.
//!
//! Elements are stored densely: `|G| * s` residues mod `p^r`, the `s`
//! coefficients of `Y^g` at offset `index(g) * s`.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigUint;
use rand::Rng;

use crate::abelian_group::{AbelianGroup, GroupElement, SylowSplit};
use crate::error::{Error, Result};
use crate::galois_ring::{GaloisRing, GrElement};

/// Groups up to this order get a precomputed addition table.
const ADD_TABLE_LIMIT: usize = 1024;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupRingElement {
    coeffs: Vec<u64>,
}

impl GroupRingElement {
    /// Flat coefficient vector of length `|G| * s`.
    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<u64> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }
}

#[derive(Debug)]
pub struct GroupRing {
    ring: Arc<GaloisRing>,
    group: AbelianGroup,
    n: usize,
    s: usize,
    add_table: Option<Vec<u32>>,
    neg_table: Vec<u32>,
}

impl fmt::Display for GroupRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}]", self.ring, self.group)
    }
}

impl GroupRing {
    pub fn new(ring: Arc<GaloisRing>, group: AbelianGroup) -> Self {
        let n = group.order() as usize;
        let add_table = (n <= ADD_TABLE_LIMIT).then(|| {
            let mut t = Vec::with_capacity(n * n);
            for i in 0..n {
                for j in 0..n {
                    t.push(group.add_indices(i, j) as u32);
                }
            }
            t
        });
        let neg_table = (0..n).map(|i| group.neg_index(i) as u32).collect();
        Self {
            s: ring.s() as usize,
            ring,
            group,
            n,
            add_table,
            neg_table,
        }
    }

    pub fn shared(ring: Arc<GaloisRing>, group: AbelianGroup) -> Arc<Self> {
        Arc::new(Self::new(ring, group))
    }

    pub fn ring(&self) -> &Arc<GaloisRing> {
        &self.ring
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    /// `|G|`.
    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// Length of the flat coefficient vector, `|G| * s`.
    pub fn width(&self) -> usize {
        self.n * self.s
    }

    /// `p^(r s |G|)`.
    pub fn size(&self) -> BigUint {
        self.ring.size().pow(self.n as u32)
    }

    /// `log_p |ring|`.
    pub fn log_size(&self) -> u64 {
        self.ring.r() as u64 * self.width() as u64
    }

    #[inline]
    pub fn add_index(&self, i: usize, j: usize) -> usize {
        match &self.add_table {
            Some(t) => t[i * self.n + j] as usize,
            None => self.group.add_indices(i, j),
        }
    }

    #[inline]
    pub fn neg_index(&self, i: usize) -> usize {
        self.neg_table[i] as usize
    }

    fn assert_same(&self, u: &GroupRingElement) {
        assert_eq!(u.coeffs.len(), self.width(), "element does not belong to {self}");
    }

    pub fn contains(&self, u: &GroupRingElement) -> bool {
        u.coeffs.len() == self.width() && u.coeffs.iter().all(|&c| c < self.ring.characteristic())
    }

    fn check(&self, u: &GroupRingElement) -> Result<()> {
        if self.contains(u) {
            Ok(())
        } else {
            Err(Error::RingMismatch(format!("element does not belong to {self}")))
        }
    }

    pub fn zero(&self) -> GroupRingElement {
        GroupRingElement {
            coeffs: vec![0; self.width()],
        }
    }

    pub fn one(&self) -> GroupRingElement {
        self.scalar(&self.ring.one())
    }

    /// `c Y^0`.
    pub fn scalar(&self, c: &GrElement) -> GroupRingElement {
        self.monomial(c, 0)
    }

    /// `c Y^g` for the group element with index `g`.
    pub fn monomial(&self, c: &GrElement, g: usize) -> GroupRingElement {
        let mut u = self.zero();
        u.coeffs[g * self.s..(g + 1) * self.s].copy_from_slice(c.coeffs());
        u
    }

    pub fn from_int(&self, v: i64) -> GroupRingElement {
        self.scalar(&self.ring.from_int(v))
    }

    /// Builds an element from one ring coefficient per group index.
    pub fn from_coefficients(&self, coeffs: &[GrElement]) -> Result<GroupRingElement> {
        if coeffs.len() != self.n {
            return Err(Error::RingMismatch(format!(
                "{} coefficients supplied for {self}",
                coeffs.len()
            )));
        }
        let mut flat = Vec::with_capacity(self.width());
        for c in coeffs {
            if !self.ring.contains(c) {
                return Err(Error::RingMismatch(format!("[{c}] is not in {}", self.ring)));
            }
            flat.extend_from_slice(c.coeffs());
        }
        Ok(GroupRingElement { coeffs: flat })
    }

    /// Wraps a flat vector, reducing entries mod `p^r`.
    pub fn from_flat(&self, flat: Vec<u64>) -> Result<GroupRingElement> {
        if flat.len() != self.width() {
            return Err(Error::RingMismatch(format!(
                "flat vector of length {} for {self}",
                flat.len()
            )));
        }
        let n = self.ring.characteristic();
        Ok(GroupRingElement {
            coeffs: flat.into_iter().map(|c| c % n).collect(),
        })
    }

    pub fn coefficient(&self, u: &GroupRingElement, g: usize) -> GrElement {
        self.ring
            .element(&u.coeffs[g * self.s..(g + 1) * self.s])
            .expect("canonical coefficients")
    }

    pub fn coefficients(&self, u: &GroupRingElement) -> Vec<GrElement> {
        (0..self.n).map(|g| self.coefficient(u, g)).collect()
    }

    pub fn add(&self, u: &GroupRingElement, v: &GroupRingElement) -> GroupRingElement {
        self.assert_same(u);
        self.assert_same(v);
        let zm = self.ring.chain_modulus();
        GroupRingElement {
            coeffs: u.coeffs.iter().zip(&v.coeffs).map(|(&a, &b)| zm.add(a, b)).collect(),
        }
    }

    pub fn sub(&self, u: &GroupRingElement, v: &GroupRingElement) -> GroupRingElement {
        self.assert_same(u);
        self.assert_same(v);
        let zm = self.ring.chain_modulus();
        GroupRingElement {
            coeffs: u.coeffs.iter().zip(&v.coeffs).map(|(&a, &b)| zm.sub(a, b)).collect(),
        }
    }

    pub fn neg(&self, u: &GroupRingElement) -> GroupRingElement {
        let zm = self.ring.chain_modulus();
        GroupRingElement {
            coeffs: u.coeffs.iter().map(|&a| zm.neg(a)).collect(),
        }
    }

    /// Multiplication by an integer.
    pub fn scale_int(&self, u: &GroupRingElement, k: u64) -> GroupRingElement {
        let zm = self.ring.chain_modulus();
        GroupRingElement {
            coeffs: u.coeffs.iter().map(|&a| zm.mul(a, k)).collect(),
        }
    }

    /// Multiplication by a ring scalar.
    pub fn scale(&self, c: &GrElement, u: &GroupRingElement) -> GroupRingElement {
        self.assert_same(u);
        let mut out = self.zero();
        for g in 0..self.n {
            let block = &u.coeffs[g * self.s..(g + 1) * self.s];
            if block.iter().all(|&x| x == 0) {
                continue;
            }
            let prod = self.ring.mul_slices(c.coeffs(), block);
            out.coeffs[g * self.s..(g + 1) * self.s].copy_from_slice(&prod);
        }
        out
    }

    /// `Y^g u`.
    pub fn shift(&self, u: &GroupRingElement, g: usize) -> GroupRingElement {
        self.assert_same(u);
        let mut out = self.zero();
        for h in 0..self.n {
            let t = self.add_index(g, h);
            out.coeffs[t * self.s..(t + 1) * self.s]
                .copy_from_slice(&u.coeffs[h * self.s..(h + 1) * self.s]);
        }
        out
    }

    /// Convolution product.
    pub fn mul(&self, u: &GroupRingElement, v: &GroupRingElement) -> GroupRingElement {
        self.assert_same(u);
        self.assert_same(v);
        let s = self.s;
        let zm = self.ring.chain_modulus();
        let nonzero = |w: &GroupRingElement| -> Vec<usize> {
            (0..self.n)
                .filter(|&g| w.coeffs[g * s..(g + 1) * s].iter().any(|&x| x != 0))
                .collect()
        };
        let (su, sv) = (nonzero(u), nonzero(v));
        let mut out = self.zero();
        for &g in &su {
            let a = &u.coeffs[g * s..(g + 1) * s];
            for &h in &sv {
                let b = &v.coeffs[h * s..(h + 1) * s];
                let t = self.add_index(g, h);
                let prod = self.ring.mul_slices(a, b);
                for (o, x) in out.coeffs[t * s..(t + 1) * s].iter_mut().zip(prod) {
                    *o = zm.add(*o, x);
                }
            }
        }
        out
    }

    pub fn checked_add(&self, u: &GroupRingElement, v: &GroupRingElement) -> Result<GroupRingElement> {
        self.check(u)?;
        self.check(v)?;
        Ok(self.add(u, v))
    }

    pub fn checked_mul(&self, u: &GroupRingElement, v: &GroupRingElement) -> Result<GroupRingElement> {
        self.check(u)?;
        self.check(v)?;
        Ok(self.mul(u, v))
    }

    /// `sum_g u_g v_g`.
    pub fn form_euclidean(&self, u: &GroupRingElement, v: &GroupRingElement) -> GrElement {
        self.assert_same(u);
        self.assert_same(v);
        (0..self.n).fold(self.ring.zero(), |acc, g| {
            let prod = self.ring.mul(&self.coefficient(u, g), &self.coefficient(v, g));
            self.ring.add(&acc, &prod)
        })
    }

    /// `sum_g u_g bar(v_g)`; requires even `s`.
    pub fn form_hermitian(&self, u: &GroupRingElement, v: &GroupRingElement) -> Result<GrElement> {
        self.assert_same(u);
        self.assert_same(v);
        let mut acc = self.ring.zero();
        for g in 0..self.n {
            let conj = self.ring.bar(&self.coefficient(v, g))?;
            acc = self.ring.add(&acc, &self.ring.mul(&self.coefficient(u, g), &conj));
        }
        Ok(acc)
    }

    /// `sum c_g Y^g -> sum c_g Y^{-g}`.
    pub fn hat(&self, u: &GroupRingElement) -> GroupRingElement {
        self.assert_same(u);
        let mut out = self.zero();
        for g in 0..self.n {
            let t = self.neg_index(g);
            out.coeffs[t * self.s..(t + 1) * self.s]
                .copy_from_slice(&u.coeffs[g * self.s..(g + 1) * self.s]);
        }
        out
    }

    /// `sum c_g Y^g -> sum bar(c_g) Y^{-g}`; requires even `s`.
    pub fn tilde(&self, u: &GroupRingElement) -> Result<GroupRingElement> {
        let hat = self.hat(u);
        let conj: Result<Vec<GrElement>> = self
            .coefficients(&hat)
            .iter()
            .map(|c| self.ring.bar(c))
            .collect();
        self.from_coefficients(&conj?)
    }

    /// Coefficient-wise `sigma^k`.
    pub fn frobenius(&self, u: &GroupRingElement, k: u32) -> GroupRingElement {
        let coeffs: Vec<GrElement> = self
            .coefficients(u)
            .iter()
            .map(|c| self.ring.frobenius(c, k))
            .collect();
        self.from_coefficients(&coeffs).expect("same ring")
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> GroupRingElement {
        let n = self.ring.characteristic();
        GroupRingElement {
            coeffs: (0..self.width()).map(|_| rng.gen_range(0..n)).collect(),
        }
    }

    /// Integer encoding: flat coefficients as base-`p^r` digits, first most
    /// significant, so that numeric order is lexicographic order.
    pub fn encode(&self, u: &GroupRingElement) -> Option<u64> {
        let base = self.ring.characteristic();
        u.coeffs
            .iter()
            .try_fold(0u64, |acc, &c| acc.checked_mul(base)?.checked_add(c))
    }

    pub fn decode(&self, mut code: u64) -> GroupRingElement {
        let base = self.ring.characteristic();
        let mut coeffs = vec![0; self.width()];
        for slot in coeffs.iter_mut().rev() {
            *slot = code % base;
            code /= base;
        }
        GroupRingElement { coeffs }
    }

    /// Text form `{(0):1; (1):3}`, zero coefficients omitted, `{}` for zero.
    pub fn format(&self, u: &GroupRingElement) -> String {
        let terms: Vec<String> = (0..self.n)
            .filter_map(|g| {
                let c = self.coefficient(u, g);
                (!c.is_zero()).then(|| format!("{}:{}", self.group.element_at(g), c))
            })
            .collect();
        format!("{{{}}}", terms.join("; "))
    }

    /// Inverse of [`GroupRing::format`]; repeated group elements are summed.
    pub fn parse(&self, text: &str) -> Result<GroupRingElement> {
        let inner = text
            .trim()
            .strip_prefix('{')
            .and_then(|t| t.strip_suffix('}'))
            .ok_or_else(|| Error::Parse(format!("group ring element `{text}` must be braced")))?;
        let mut u = self.zero();
        for term in inner.split(';').map(str::trim).filter(|t| !t.is_empty()) {
            let (g, c) = term
                .split_once(':')
                .ok_or_else(|| Error::Parse(format!("term `{term}` lacks `:`")))?;
            let g = self.group.parse_element(g)?;
            let c = self.ring.parse_element(c)?;
            u = self.add(&u, &self.monomial(&c, self.group.index_of(&g)));
        }
        Ok(u)
    }

    /// Every element, in encoding order. Only for tiny rings.
    pub fn elements(&self) -> impl Iterator<Item = GroupRingElement> + '_ {
        let total = self
            .ring
            .characteristic()
            .checked_pow(self.width() as u32)
            .expect("group ring too large to enumerate");
        (0..total).map(move |c| self.decode(c))
    }
}

/// `GR[G]` viewed as `R[P]` with `R = GR[A]`, for `G = A (+) P`.
#[derive(Debug)]
pub struct SplitGroupRing {
    full: Arc<GroupRing>,
    coeff: Arc<GroupRing>,
    split: SylowSplit,
    /// For each `G`-index, the pair (A-index, P-index).
    table: Vec<(usize, usize)>,
    /// For each (P-index, A-index), the `G`-index.
    inverse: Vec<usize>,
}

/// Element of `R[P]`: one `R`-coefficient per element of `P`, in index order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SplitElement {
    pub parts: Vec<GroupRingElement>,
}

impl SplitGroupRing {
    pub fn new(full: Arc<GroupRing>) -> Self {
        let p = full.ring().p();
        let split = full.group().sylow_decompose(p);
        let coeff = GroupRing::shared(full.ring().clone(), split.complement().clone());
        let table = split.index_table();
        let na = split.complement().order() as usize;
        let mut inverse = vec![0; table.len()];
        for (g, &(a, b)) in table.iter().enumerate() {
            inverse[b * na + a] = g;
        }
        Self {
            full,
            coeff,
            split,
            table,
            inverse,
        }
    }

    pub fn full(&self) -> &Arc<GroupRing> {
        &self.full
    }

    /// `R = GR[A]`.
    pub fn coefficient_ring(&self) -> &Arc<GroupRing> {
        &self.coeff
    }

    pub fn split(&self) -> &SylowSplit {
        &self.split
    }

    pub fn sylow(&self) -> &AbelianGroup {
        self.split.sylow()
    }

    /// Index in `G` of `a + b`.
    pub fn join_index(&self, a: usize, b: usize) -> usize {
        self.inverse[b * self.coeff.len() + a]
    }

    pub fn join_element(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        self.split.join(a, b)
    }

    /// The isomorphism `Phi`: the coefficient of `Y^b` is `sum_a alpha_{a+b} Y^a`.
    pub fn phi(&self, u: &GroupRingElement) -> SplitElement {
        let s = self.full.ring().s() as usize;
        let np = self.sylow().order() as usize;
        let mut parts = vec![self.coeff.zero().into_coeffs(); np];
        for (g, &(a, b)) in self.table.iter().enumerate() {
            parts[b][a * s..(a + 1) * s].copy_from_slice(&u.coeffs()[g * s..(g + 1) * s]);
        }
        SplitElement {
            parts: parts
                .into_iter()
                .map(|c| GroupRingElement { coeffs: c })
                .collect(),
        }
    }

    pub fn phi_inverse(&self, x: &SplitElement) -> GroupRingElement {
        let s = self.full.ring().s() as usize;
        let mut out = self.full.zero();
        for (g, &(a, b)) in self.table.iter().enumerate() {
            out.coeffs[g * s..(g + 1) * s].copy_from_slice(&x.parts[b].coeffs()[a * s..(a + 1) * s]);
        }
        out
    }

    pub fn zero(&self) -> SplitElement {
        SplitElement {
            parts: vec![self.coeff.zero(); self.sylow().order() as usize],
        }
    }

    /// `c Y^b` with `c` in `R`.
    pub fn monomial(&self, c: &GroupRingElement, b: usize) -> SplitElement {
        let mut x = self.zero();
        x.parts[b] = c.clone();
        x
    }

    pub fn add(&self, x: &SplitElement, y: &SplitElement) -> SplitElement {
        SplitElement {
            parts: x
                .parts
                .iter()
                .zip(&y.parts)
                .map(|(a, b)| self.coeff.add(a, b))
                .collect(),
        }
    }

    pub fn mul(&self, x: &SplitElement, y: &SplitElement) -> SplitElement {
        let p_group = self.sylow();
        let mut out = self.zero();
        for (i, xi) in x.parts.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.parts.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let t = p_group.add_indices(i, j);
                out.parts[t] = self.coeff.add(&out.parts[t], &self.coeff.mul(xi, yj));
            }
        }
        out
    }

    /// `Y^b x`.
    pub fn shift(&self, x: &SplitElement, b: usize) -> SplitElement {
        let p_group = self.sylow();
        let mut out = self.zero();
        for (i, xi) in x.parts.iter().enumerate() {
            out.parts[p_group.add_indices(i, b)] = xi.clone();
        }
        out
    }

    /// `sum_b x_b hat(y_b)`, an element of `R`.
    pub fn hat_pairing(&self, x: &SplitElement, y: &SplitElement) -> GroupRingElement {
        x.parts.iter().zip(&y.parts).fold(self.coeff.zero(), |acc, (a, b)| {
            self.coeff.add(&acc, &self.coeff.mul(a, &self.coeff.hat(b)))
        })
    }

    /// `sum_b x_b tilde(y_b)`; requires even `s`.
    pub fn tilde_pairing(&self, x: &SplitElement, y: &SplitElement) -> Result<GroupRingElement> {
        let mut acc = self.coeff.zero();
        for (a, b) in x.parts.iter().zip(&y.parts) {
            acc = self.coeff.add(&acc, &self.coeff.mul(a, &self.coeff.tilde(b)?));
        }
        Ok(acc)
    }
}

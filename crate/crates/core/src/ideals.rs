//! Ideals of `GR(p^r, s)[G]` (abelian codes) as `Z/p^r`-submodules of the
//! flat coefficient space, kept in Howell form so that equal ideals have
//! equal bases.

use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigUint;
use rayon::prelude::*;

use crate::abelian_group::AbelianGroup;
use crate::decompose::{Decomposer, Duality};
use crate::error::{Error, Result};
use crate::galois_ring::GaloisRing;
use crate::group_ring::{GroupRing, GroupRingElement, SplitGroupRing};
use crate::linalg::{kernel, ChainModulus, HowellBasis};

/// Default cap on the number of ring elements for exhaustive operations.
pub const DEFAULT_EXHAUSTIVE_BOUND: u64 = 1 << 16;

/// Largest flat width (`|G| * s`) for which ideals are materialised.
pub const MAX_MODULE_WIDTH: usize = 512;

/// Exhaustive bound from `GRSD_EXHAUSTIVE_BOUND`, else the default.
pub fn exhaustive_bound_from_env() -> u64 {
    std::env::var("GRSD_EXHAUSTIVE_BOUND")
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_EXHAUSTIVE_BOUND)
}

#[derive(Clone, Debug)]
pub struct Ideal {
    ring: Arc<GroupRing>,
    basis: HowellBasis,
    generators: Vec<GroupRingElement>,
}

impl PartialEq for Ideal {
    fn eq(&self, other: &Self) -> bool {
        self.basis == other.basis
            && (Arc::ptr_eq(&self.ring, &other.ring) || self.ring.to_string() == other.ring.to_string())
    }
}

impl Eq for Ideal {}

impl Ideal {
    pub fn ring(&self) -> &Arc<GroupRing> {
        &self.ring
    }

    pub fn basis(&self) -> &HowellBasis {
        &self.basis
    }

    /// A generating set (as an ideal).
    pub fn generators(&self) -> &[GroupRingElement] {
        &self.generators
    }

    /// `|C| = p^log_size`.
    pub fn log_size(&self) -> u32 {
        self.basis.log_size(self.ring.ring().chain_modulus())
    }

    pub fn size(&self) -> BigUint {
        BigUint::from(self.ring.ring().p()).pow(self.log_size())
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_zero()
    }

    pub fn contains(&self, u: &GroupRingElement) -> bool {
        self.basis.contains(self.ring.ring().chain_modulus(), u.coeffs())
    }

    pub fn is_subideal_of(&self, other: &Ideal) -> bool {
        self.basis.is_submodule_of(self.ring.ring().chain_modulus(), &other.basis)
    }

    /// Sorted element encodings; fails when the code is larger than `bound`.
    pub fn elements(&self, bound: u64) -> Result<Vec<u64>> {
        let size = self.size();
        if size > BigUint::from(bound) {
            return Err(Error::TooLarge {
                size: size.to_string(),
                bound,
            });
        }
        let mut out = Vec::new();
        let m = self.ring.ring().chain_modulus();
        let mut overflow = false;
        self.basis.for_each_element(m, |v| {
            let u = self.ring.from_flat(v.to_vec()).expect("basis vectors lie in the ring");
            match self.ring.encode(&u) {
                Some(code) => out.push(code),
                None => overflow = true,
            }
        });
        if overflow {
            return Err(Error::TooLarge {
                size: self.ring.size().to_string(),
                bound: u64::MAX,
            });
        }
        out.sort_unstable();
        Ok(out)
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self.generators.iter().map(|g| self.ring.format(g)).collect();
        write!(f, "<{}>", gens.join(", "))
    }
}

/// Ideal operations over one group ring.
#[derive(Debug, Clone)]
pub struct IdealEngine {
    ring: Arc<GroupRing>,
    m: ChainModulus,
    bound: u64,
    /// `x^t` as an element of the coefficient ring, `t < s`.
    x_powers: Vec<crate::galois_ring::GrElement>,
}

impl IdealEngine {
    pub fn new(ring: Arc<GroupRing>) -> Result<Self> {
        Self::with_bound(ring, DEFAULT_EXHAUSTIVE_BOUND)
    }

    pub fn with_bound(ring: Arc<GroupRing>, bound: u64) -> Result<Self> {
        if ring.width() > MAX_MODULE_WIDTH {
            return Err(Error::TooLarge {
                size: ring.size().to_string(),
                bound,
            });
        }
        let gr = ring.ring().clone();
        let mut x_powers = Vec::with_capacity(gr.s() as usize);
        let mut t = gr.one();
        for _ in 0..gr.s() {
            x_powers.push(t.clone());
            t = gr.mul(&t, &gr.x());
        }
        Ok(Self {
            m: *gr.chain_modulus(),
            ring,
            bound,
            x_powers,
        })
    }

    pub fn ring(&self) -> &Arc<GroupRing> {
        &self.ring
    }

    pub fn bound(&self) -> u64 {
        self.bound
    }

    /// `log_p |ring|`.
    pub fn ring_log_size(&self) -> u32 {
        self.ring.ring().r() * self.ring.width() as u32
    }

    fn ring_size_u64(&self) -> Option<u64> {
        self.ring.ring().p().checked_pow(self.ring_log_size())
    }

    pub fn within_bound(&self) -> bool {
        self.ring_size_u64().is_some_and(|n| n <= self.bound)
    }

    fn require_bound(&self) -> Result<()> {
        if self.within_bound() {
            Ok(())
        } else {
            Err(Error::TooLarge {
                size: self.ring.size().to_string(),
                bound: self.bound,
            })
        }
    }

    /// `Z/p^r`-spanning rows `x^t Y^g u` of the ideal generated by `u`.
    fn closure_rows(&self, u: &GroupRingElement, rows: &mut Vec<Vec<u64>>) {
        for g in 0..self.ring.len() {
            let shifted = self.ring.shift(u, g);
            if shifted.is_zero() {
                return;
            }
            for xt in &self.x_powers {
                rows.push(self.ring.scale(xt, &shifted).into_coeffs());
            }
        }
    }

    fn ideal_from_basis(&self, basis: HowellBasis, generators: Vec<GroupRingElement>) -> Ideal {
        Ideal {
            ring: self.ring.clone(),
            basis,
            generators,
        }
    }

    /// The ideal generated by a set of elements.
    pub fn generated(&self, generators: &[GroupRingElement]) -> Result<Ideal> {
        let mut rows = Vec::new();
        for g in generators {
            if !self.ring.contains(g) {
                return Err(Error::RingMismatch(format!("generator not in {}", self.ring)));
            }
            self.closure_rows(g, &mut rows);
        }
        let basis = HowellBasis::from_rows(&self.m, self.ring.width(), rows);
        let generators = generators.iter().filter(|g| !g.is_zero()).cloned().collect();
        Ok(self.ideal_from_basis(basis, generators))
    }

    pub fn principal(&self, u: &GroupRingElement) -> Result<Ideal> {
        self.generated(std::slice::from_ref(u))
    }

    pub fn zero_ideal(&self) -> Ideal {
        self.ideal_from_basis(HowellBasis::zero(self.ring.width()), Vec::new())
    }

    pub fn whole(&self) -> Ideal {
        self.principal(&self.ring.one()).expect("one lies in the ring")
    }

    /// `C + D`.
    pub fn join(&self, c: &Ideal, d: &Ideal) -> Ideal {
        let basis = c.basis.join(&self.m, &d.basis);
        let mut generators = c.generators.clone();
        generators.extend(d.generators.iter().cloned());
        self.ideal_from_basis(basis, generators)
    }

    fn principal_bases(&self) -> Result<Vec<(HowellBasis, u64)>> {
        self.require_bound()?;
        let total = self.ring_size_u64().expect("bounded");
        let found: Vec<(HowellBasis, u64)> = (1..total)
            .into_par_iter()
            .map(|code| {
                let u = self.ring.decode(code);
                let mut rows = Vec::new();
                self.closure_rows(&u, &mut rows);
                (HowellBasis::from_rows(&self.m, self.ring.width(), rows), code)
            })
            .collect();
        // first generator (smallest code) per distinct ideal
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for (basis, code) in found {
            if seen.insert(basis.clone()) {
                out.push((basis, code));
            }
        }
        Ok(out)
    }

    /// Every ideal exactly once: all principal ideals, closed under sums.
    /// Ordered by size, then by basis.
    pub fn enumerate_ideals(&self) -> Result<Vec<Ideal>> {
        let mut ideals = Vec::new();
        self.join_closure(|i| {
            ideals.push(i.clone());
            false
        })?;
        ideals.sort_by(|a, b| {
            (a.log_size(), a.basis.rows()).cmp(&(b.log_size(), b.basis.rows()))
        });
        Ok(ideals)
    }

    /// Walks the join closure, calling `visit` once per ideal until it
    /// returns true. Returns whether the walk was stopped early.
    pub fn join_closure(&self, mut visit: impl FnMut(&Ideal) -> bool) -> Result<bool> {
        let principals = self.principal_bases()?;
        let principal_ideals: Vec<Ideal> = principals
            .into_iter()
            .map(|(basis, code)| self.ideal_from_basis(basis, vec![self.ring.decode(code)]))
            .collect();

        let zero = self.zero_ideal();
        if visit(&zero) {
            return Ok(true);
        }
        let mut seen: HashSet<HowellBasis> = HashSet::new();
        seen.insert(zero.basis.clone());
        let mut frontier = Vec::new();
        for ideal in &principal_ideals {
            if seen.insert(ideal.basis.clone()) {
                if visit(ideal) {
                    return Ok(true);
                }
                frontier.push(ideal.clone());
            }
        }
        while !frontier.is_empty() {
            let joins: Vec<Ideal> = frontier
                .par_iter()
                .flat_map_iter(|c| {
                    principal_ideals
                        .iter()
                        .filter(|p| !p.is_subideal_of(c))
                        .map(|p| self.join(c, p))
                        .collect::<Vec<_>>()
                })
                .collect();
            let mut next = Vec::new();
            for ideal in joins {
                if seen.insert(ideal.basis.clone()) {
                    if visit(&ideal) {
                        return Ok(true);
                    }
                    next.push(ideal);
                }
            }
            frontier = next;
        }
        Ok(false)
    }

    /// Row vectors of the `Z/p^r`-linear functionals `v -> coeff_k(<c, v>)`.
    fn functionals(&self, c: &Ideal, duality: Duality) -> Result<Vec<Vec<u64>>> {
        let gr = self.ring.ring();
        let s = gr.s() as usize;
        let conj_basis = match duality {
            Duality::Euclidean => self.x_powers.clone(),
            Duality::Hermitian => self
                .x_powers
                .iter()
                .map(|x| gr.bar(x))
                .collect::<Result<Vec<_>>>()?,
        };
        let mut out = Vec::with_capacity(c.basis.rows().len() * s);
        for row in c.basis.rows() {
            let u = self.ring.from_flat(row.clone())?;
            let mut funcs = vec![vec![0u64; self.ring.width()]; s];
            for g in 0..self.ring.len() {
                let cg = self.ring.coefficient(&u, g);
                if cg.is_zero() {
                    continue;
                }
                for (t, b) in conj_basis.iter().enumerate() {
                    let prod = gr.mul(&cg, b);
                    for (k, &v) in prod.coeffs().iter().enumerate() {
                        funcs[k][g * s + t] = v;
                    }
                }
            }
            out.extend(funcs);
        }
        Ok(out)
    }

    /// `C^perp = { v : <u, v> = 0 for all u in C }`.
    pub fn dual(&self, c: &Ideal, duality: Duality) -> Result<Ideal> {
        let funcs = self.functionals(c, duality)?;
        let basis = kernel(&self.m, &funcs, self.ring.width());
        let generators = basis
            .rows()
            .iter()
            .map(|r| self.ring.from_flat(r.clone()))
            .collect::<Result<Vec<_>>>()?;
        Ok(self.ideal_from_basis(basis, generators))
    }

    /// `C = C^perp`: the size filter `|C|^2 = |ring|`, then `C` inside `C^perp`.
    pub fn is_self_dual(&self, c: &Ideal, duality: Duality) -> Result<bool> {
        if duality == Duality::Hermitian && !self.ring.ring().s().is_multiple_of(2) {
            return Err(Error::OddDegree(self.ring.ring().s()));
        }
        if 2 * c.log_size() != self.ring_log_size() {
            return Ok(false);
        }
        let rows: Vec<GroupRingElement> = c
            .basis
            .rows()
            .iter()
            .map(|r| self.ring.from_flat(r.clone()))
            .collect::<Result<_>>()?;
        for u in &rows {
            for v in &rows {
                let value = match duality {
                    Duality::Euclidean => self.ring.form_euclidean(u, v),
                    Duality::Hermitian => self.ring.form_hermitian(u, v)?,
                };
                if !value.is_zero() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// All self-dual ideals, by exhaustive enumeration.
    pub fn self_dual_ideals(&self, duality: Duality) -> Result<Vec<Ideal>> {
        let mut out = Vec::new();
        for ideal in self.enumerate_ideals()? {
            if self.is_self_dual(&ideal, duality)? {
                out.push(ideal);
            }
        }
        Ok(out)
    }

    /// Exhaustive search for one self-dual ideal, stopping at the first.
    pub fn find_self_dual(&self, duality: Duality) -> Result<Option<Ideal>> {
        let mut found = None;
        let mut failure = None;
        self.join_closure(|ideal| match self.is_self_dual(ideal, duality) {
            Ok(true) => {
                found = Some(ideal.clone());
                true
            }
            Ok(false) => false,
            Err(e) => {
                failure = Some(e);
                true
            }
        })?;
        match failure {
            Some(e) => Err(e),
            None => Ok(found),
        }
    }
}

/// Existence conditions: `r` even, or `p = 2` and `|G|` even.
pub fn existence_conditions(p: u64, r: u32, group: &AbelianGroup) -> bool {
    r.is_multiple_of(2) || (p == 2 && group.order().is_multiple_of(2))
}

/// A self-dual code given by generators, with the ideal itself when it is
/// small enough to materialise.
#[derive(Clone, Debug)]
pub struct SelfDualCode {
    pub ring: Arc<GroupRing>,
    pub duality: Duality,
    pub generators: Vec<GroupRingElement>,
    pub ideal: Option<Ideal>,
}

/// A self-dual code whenever one exists: `p^(r/2) GR[G]` for even `r`;
/// for `p = 2` and odd `r = 2r' - 1`, the code generated by `2^r' E`,
/// `2^(r'-1) E (1 + Y^x)` and `F`, where `E` (resp. `F`) sums the idempotents of
/// the unpaired (resp. first-of-pair) components of `GR[A]` and `x` has order 2.
pub fn construct_self_dual(
    p: u64,
    r: u32,
    s: u32,
    group: &AbelianGroup,
    duality: Duality,
) -> Result<SelfDualCode> {
    if duality == Duality::Hermitian && !s.is_multiple_of(2) {
        return Err(Error::OddDegree(s));
    }
    if !existence_conditions(p, r, group) {
        return Err(Error::NoSelfDualCode(format!(
            "r = {r} is odd and {}",
            if p == 2 { "|G| is odd" } else { "p is odd" }
        )));
    }
    let gr = GaloisRing::shared(p, r, s)?;
    let full = GroupRing::shared(gr.clone(), group.clone());
    let generators = if r.is_multiple_of(2) {
        vec![full.from_int(p.pow(r / 2) as i64)]
    } else {
        let split = SplitGroupRing::new(full.clone());
        let dec = Decomposer::new(split.coefficient_ring().clone())?;
        let coeff = split.coefficient_ring();
        let mut e = coeff.zero();
        let mut f = coeff.zero();
        for (i, slot) in dec.slots(duality)?.iter().enumerate() {
            let idem = dec.idempotent(duality, i, 0)?;
            if slot.kind.is_pair() {
                f = coeff.add(&f, &idem);
            } else {
                e = coeff.add(&e, &idem);
            }
        }
        let sylow = split.sylow();
        let x = (0..sylow.order() as usize)
            .find(|&b| sylow.element_order(&sylow.element_at(b)) == 2)
            .expect("Sylow 2-subgroup is nontrivial");
        let rp = r.div_ceil(2);
        let e1 = coeff.scale_int(&e, 1 << rp);
        let e2 = coeff.scale_int(&e, 1 << (rp - 1));
        let g1 = split.monomial(&e1, 0);
        let g2 = split.add(&split.monomial(&e2, 0), &split.monomial(&e2, x));
        let g3 = split.monomial(&f, 0);
        [g1, g2, g3]
            .iter()
            .map(|g| split.phi_inverse(g))
            .filter(|g| !g.is_zero())
            .collect()
    };
    let ideal = if full.width() <= MAX_MODULE_WIDTH {
        Some(IdealEngine::new(full.clone())?.generated(&generators)?)
    } else {
        None
    };
    Ok(SelfDualCode {
        ring: full,
        duality,
        generators,
        ideal,
    })
}

/// Self-dual codes of a semisimple group ring, enumerated on components.
#[derive(Clone, Debug)]
pub struct SemisimpleEnumeration {
    pub ring: Arc<GroupRing>,
    pub duality: Duality,
    pub count: BigUint,
    /// Single generators of the first `limit` codes.
    pub representatives: Vec<GroupRingElement>,
}

/// Every component ideal is `p^i GR`; unpaired components must take
/// `p^(r/2)`, pairs take `(p^i, p^(r-i))` for `0 <= i <= r`.
pub fn enumerate_semisimple_selfdual(
    p: u64,
    r: u32,
    s: u32,
    group: &AbelianGroup,
    duality: Duality,
    limit: usize,
) -> Result<SemisimpleEnumeration> {
    let gr = GaloisRing::shared(p, r, s)?;
    let ring = GroupRing::shared(gr, group.clone());
    let dec = Decomposer::new(ring.clone())?;
    let slots = dec.slots(duality)?.to_vec();
    let pairs = slots.iter().filter(|sl| sl.kind.is_pair()).count();
    // the class of 0 is never paired, so odd r admits nothing
    if !r.is_multiple_of(2) {
        return Ok(SemisimpleEnumeration {
            ring,
            duality,
            count: BigUint::from(0u32),
            representatives: Vec::new(),
        });
    }
    let count = BigUint::from(r + 1).pow(pairs as u32);

    let mut representatives = Vec::new();
    let mut choice = vec![0u32; pairs];
    'outer: while representatives.len() < limit {
        let mut d = dec.zero(duality)?;
        let mut pair_idx = 0;
        for (i, slot) in slots.iter().enumerate() {
            let comp = dec.component_ring(duality, i)?;
            let scaled = |k: u32| comp.from_int(p.pow(k) as i64);
            if slot.kind.is_pair() {
                let k = choice[pair_idx];
                d.parts[i] = vec![scaled(k), scaled(r - k)];
                pair_idx += 1;
            } else {
                d.parts[i] = vec![scaled(r / 2)];
            }
        }
        representatives.push(dec.recompose(&d)?);
        for c in choice.iter_mut() {
            *c += 1;
            if *c <= r {
                continue 'outer;
            }
            *c = 0;
        }
        break;
    }
    Ok(SemisimpleEnumeration {
        ring,
        duality,
        count,
        representatives,
    })
}

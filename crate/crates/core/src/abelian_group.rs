//! Finite abelian groups `Z_{m_1} x ... x Z_{m_N}`.
//!
//! Elements are coordinate tuples. Each element also has a dense index in
//! mixed radix with the first coordinate most significant, so index order and
//! lexicographic order on coordinates coincide.

use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;

use crate::arith::{crt, factorize};
use crate::error::{Error, Result};

/// Upper bound for `count_order_direct`.
pub const DIRECT_COUNT_BOUND: u64 = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement(Vec<u64>);

impl GroupElement {
    pub fn coords(&self) -> &[u64] {
        &self.0
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AbelianGroup {
    factors: Vec<u64>,
    order: u64,
    exponent: u64,
    strides: Vec<u64>,
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.factors.iter().map(|m| format!("Z{m}")).collect();
        write!(f, "{}", parts.join("x"))
    }
}

impl AbelianGroup {
    pub fn new(factors: Vec<u64>) -> Result<Self> {
        if let Some(&bad) = factors.iter().find(|&&m| m < 2) {
            return Err(Error::InvalidParameter(format!(
                "cyclic factor Z{bad} must have order at least 2"
            )));
        }
        let order = factors
            .iter()
            .try_fold(1u64, |acc, &m| acc.checked_mul(m))
            .ok_or_else(|| Error::InvalidParameter("group order overflows u64".into()))?;
        let exponent = factors.iter().fold(1u64, |acc, &m| acc.lcm(&m));
        let mut strides = vec![1u64; factors.len()];
        for i in (0..factors.len().saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * factors[i + 1];
        }
        Ok(Self {
            factors,
            order,
            exponent,
            strides,
        })
    }

    pub fn trivial() -> Self {
        Self::new(Vec::new()).expect("trivial group")
    }

    pub fn cyclic(n: u64) -> Result<Self> {
        if n == 1 {
            Ok(Self::trivial())
        } else {
            Self::new(vec![n])
        }
    }

    /// Parses `Z2xZ4`, `Z7` or `1`.
    pub fn parse(spec: &str) -> Result<Self> {
        let spec = spec.trim();
        if spec == "1" {
            return Ok(Self::trivial());
        }
        let mut factors = Vec::new();
        for part in spec.split('x') {
            let n = part
                .trim()
                .strip_prefix('Z')
                .and_then(|n| n.parse::<u64>().ok())
                .ok_or_else(|| {
                    Error::Parse(format!("malformed group spec `{spec}` (expected e.g. Z2xZ4 or 1)"))
                })?;
            factors.push(n);
        }
        Self::new(factors)
    }

    pub fn factors(&self) -> &[u64] {
        &self.factors
    }

    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    pub fn is_trivial(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement(vec![0; self.rank()])
    }

    /// Builds an element, reducing each coordinate mod its factor.
    pub fn element(&self, coords: &[i64]) -> Result<GroupElement> {
        if coords.len() != self.rank() {
            return Err(Error::InvalidParameter(format!(
                "{} coordinates supplied for {self}",
                coords.len()
            )));
        }
        Ok(GroupElement(
            coords
                .iter()
                .zip(&self.factors)
                .map(|(&c, &m)| c.rem_euclid(m as i64) as u64)
                .collect(),
        ))
    }

    /// Parses `(1,2)`; the trivial group's identity is `()`.
    pub fn parse_element(&self, text: &str) -> Result<GroupElement> {
        let inner = text
            .trim()
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .ok_or_else(|| Error::Parse(format!("group element `{text}` must be parenthesized")))?;
        let coords: Vec<i64> = if inner.trim().is_empty() {
            Vec::new()
        } else {
            inner
                .split(',')
                .map(|c| c.trim().parse::<i64>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|_| Error::Parse(format!("bad coordinate in `{text}`")))?
        };
        self.element(&coords)
    }

    pub fn add(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        GroupElement(
            a.0.iter()
                .zip(&b.0)
                .zip(&self.factors)
                .map(|((&x, &y), &m)| (x + y) % m)
                .collect(),
        )
    }

    pub fn neg(&self, a: &GroupElement) -> GroupElement {
        GroupElement(
            a.0.iter()
                .zip(&self.factors)
                .map(|(&x, &m)| (m - x) % m)
                .collect(),
        )
    }

    /// `k . a`, the `k`-fold sum.
    pub fn scale(&self, k: u64, a: &GroupElement) -> GroupElement {
        GroupElement(
            a.0.iter()
                .zip(&self.factors)
                .map(|(&x, &m)| ((x as u128 * (k % m) as u128) % m as u128) as u64)
                .collect(),
        )
    }

    pub fn element_order(&self, a: &GroupElement) -> u64 {
        a.0.iter()
            .zip(&self.factors)
            .fold(1u64, |acc, (&x, &m)| acc.lcm(&(m / m.gcd(&x))))
    }

    pub fn index_of(&self, a: &GroupElement) -> usize {
        a.0.iter().zip(&self.strides).map(|(&x, &st)| x * st).sum::<u64>() as usize
    }

    pub fn element_at(&self, index: usize) -> GroupElement {
        let mut rest = index as u64;
        GroupElement(
            self.strides
                .iter()
                .zip(&self.factors)
                .map(|(&st, &m)| {
                    let c = rest / st;
                    rest %= st;
                    c % m
                })
                .collect(),
        )
    }

    /// Index of `element_at(i) + element_at(j)`.
    pub fn add_indices(&self, i: usize, j: usize) -> usize {
        let (mut i, mut j) = (i as u64, j as u64);
        let mut out = 0;
        for (&st, &m) in self.strides.iter().zip(&self.factors) {
            let (a, b) = (i / st, j / st);
            i %= st;
            j %= st;
            out += ((a + b) % m) * st;
        }
        out as usize
    }

    pub fn neg_index(&self, i: usize) -> usize {
        let (mut i, mut out) = (i as u64, 0);
        for (&st, &m) in self.strides.iter().zip(&self.factors) {
            let a = i / st;
            i %= st;
            out += ((m - a) % m) * st;
        }
        out as usize
    }

    pub fn scale_index(&self, k: u64, i: usize) -> usize {
        self.index_of(&self.scale(k, &self.element_at(i)))
    }

    /// All elements in index (= lexicographic) order.
    pub fn elements(&self) -> impl Iterator<Item = GroupElement> + '_ {
        (0..self.order as usize).map(|i| self.element_at(i))
    }

    /// Oracle: counts elements of order `d` by enumeration.
    pub fn count_order_direct(&self, d: u64) -> Result<u64> {
        if self.order > DIRECT_COUNT_BOUND {
            return Err(Error::TooLarge {
                size: self.order.to_string(),
                bound: DIRECT_COUNT_BOUND,
            });
        }
        Ok(self.elements().filter(|a| self.element_order(a) == d).count() as u64)
    }

    /// For each prime, the sorted list of prime-power exponents of the primary factors.
    pub fn primary_components(&self) -> BTreeMap<u64, Vec<u32>> {
        let mut comps: BTreeMap<u64, Vec<u32>> = BTreeMap::new();
        for &m in &self.factors {
            for (q, e) in factorize(m) {
                comps.entry(q).or_default().push(e);
            }
        }
        for exps in comps.values_mut() {
            exps.sort_unstable();
        }
        comps
    }

    /// Number of elements of order `d`, from the primary decomposition and the
    /// p-group count with `s_i = sum_j n_j min(i, j)`.
    pub fn count_order_formula(&self, d: u64) -> u64 {
        if d == 0 || !self.exponent.is_multiple_of(d) {
            return 0;
        }
        let comps = self.primary_components();
        let mut count = 1u64;
        for (q, exps) in &comps {
            let mut b = 0u32;
            let mut rest = d;
            while rest.is_multiple_of(*q) {
                rest /= q;
                b += 1;
            }
            count *= p_group_order_count(*q, exps, b);
        }
        count
    }

    /// Splits `G = A (+) P` with `P` the Sylow `p`-subgroup.
    pub fn sylow_decompose(&self, p: u64) -> SylowSplit {
        let mut a_factors = Vec::new();
        let mut p_factors = Vec::new();
        let mut slots = Vec::new();
        for &m in &self.factors {
            let mut pp = 1u64;
            while m % (pp * p) == 0 {
                pp *= p;
            }
            let rest = m / pp;
            let a_slot = (rest > 1).then(|| {
                a_factors.push(rest);
                a_factors.len() - 1
            });
            let p_slot = (pp > 1).then(|| {
                p_factors.push(pp);
                p_factors.len() - 1
            });
            slots.push(SylowSlot {
                m,
                a_part: rest,
                p_part: pp,
                a_slot,
                p_slot,
            });
        }
        SylowSplit {
            g: self.clone(),
            a: AbelianGroup::new(a_factors).expect("factors >= 2"),
            p_group: AbelianGroup::new(p_factors).expect("factors >= 2"),
            slots,
        }
    }

    /// `gamma_h(b) = sum b_i h_i (M / m_i)` reduced mod the exponent `M`.
    pub fn gamma(&self, h: &GroupElement, b: &GroupElement) -> u64 {
        let big_m = self.exponent as u128;
        let mut acc = 0u128;
        for ((&bi, &hi), &mi) in b.0.iter().zip(&h.0).zip(&self.factors) {
            acc = (acc + (bi as u128 * hi as u128 % big_m) * (self.exponent / mi) as u128) % big_m;
        }
        acc as u64
    }

    /// Invariant factors `d_1 | d_2 | ... | d_k` of an isomorphic group.
    pub fn invariant_factors(&self) -> Vec<u64> {
        let comps = self.primary_components();
        let width = comps.values().map(Vec::len).max().unwrap_or(0);
        let mut inv = vec![1u64; width];
        for (q, exps) in &comps {
            // largest exponents go to the last invariant factors
            for (k, &e) in exps.iter().rev().enumerate() {
                inv[width - 1 - k] *= q.pow(e);
            }
        }
        inv
    }

    pub fn canonical(&self) -> Self {
        Self::new(self.invariant_factors()).expect("invariant factors >= 2")
    }
}

fn p_group_order_count(q: u64, exps: &[u32], b: u32) -> u64 {
    if b == 0 {
        return 1;
    }
    // log_q of the number of elements killed by q^i
    let s = |i: u32| -> u32 { exps.iter().map(|&e| e.min(i)).sum() };
    if b > exps.iter().copied().max().unwrap_or(0) {
        return 0;
    }
    q.pow(s(b)) - q.pow(s(b - 1))
}

/// Every abelian group of the given order up to isomorphism, in invariant-factor form.
pub fn all_abelian_groups(order: u64) -> Vec<AbelianGroup> {
    let per_prime: Vec<(u64, Vec<Vec<u32>>)> = factorize(order.max(1))
        .into_iter()
        .map(|(q, e)| (q, partitions(e)))
        .collect();
    let mut out = Vec::new();
    let mut choice = vec![0usize; per_prime.len()];
    loop {
        let width = per_prime
            .iter()
            .zip(&choice)
            .map(|((_, parts), &c)| parts[c].len())
            .max()
            .unwrap_or(0);
        let mut inv = vec![1u64; width];
        for ((q, parts), &c) in per_prime.iter().zip(&choice) {
            // partitions are non-increasing; the largest part goes last
            for (k, &e) in parts[c].iter().enumerate() {
                inv[width - 1 - k] *= q.pow(e);
            }
        }
        out.push(AbelianGroup::new(inv).expect("invariant factors >= 2"));
        let mut i = 0;
        loop {
            if i == choice.len() {
                return out;
            }
            choice[i] += 1;
            if choice[i] < per_prime[i].1.len() {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
    }
}

/// Partitions of `n` as non-increasing part lists.
fn partitions(n: u32) -> Vec<Vec<u32>> {
    fn rec(n: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if n == 0 {
            out.push(cur.clone());
            return;
        }
        for part in (1..=max.min(n)).rev() {
            cur.push(part);
            rec(n - part, part, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

#[derive(Clone, Debug)]
struct SylowSlot {
    m: u64,
    a_part: u64,
    p_part: u64,
    a_slot: Option<usize>,
    p_slot: Option<usize>,
}

/// `G = A (+) P` together with the CRT coordinate maps.
#[derive(Clone, Debug)]
pub struct SylowSplit {
    g: AbelianGroup,
    a: AbelianGroup,
    p_group: AbelianGroup,
    slots: Vec<SylowSlot>,
}

impl SylowSplit {
    pub fn group(&self) -> &AbelianGroup {
        &self.g
    }

    /// The `p'`-part `A`.
    pub fn complement(&self) -> &AbelianGroup {
        &self.a
    }

    /// The Sylow subgroup `P`.
    pub fn sylow(&self) -> &AbelianGroup {
        &self.p_group
    }

    pub fn split(&self, g: &GroupElement) -> (GroupElement, GroupElement) {
        let mut a = vec![0; self.a.rank()];
        let mut b = vec![0; self.p_group.rank()];
        for (slot, &x) in self.slots.iter().zip(&g.0) {
            if let Some(i) = slot.a_slot {
                a[i] = x % slot.a_part;
            }
            if let Some(i) = slot.p_slot {
                b[i] = x % slot.p_part;
            }
        }
        (GroupElement(a), GroupElement(b))
    }

    pub fn join(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        GroupElement(
            self.slots
                .iter()
                .map(|slot| {
                    let x = slot.a_slot.map_or(0, |i| a.0[i]);
                    let y = slot.p_slot.map_or(0, |i| b.0[i]);
                    let v = crt(x, slot.a_part, y, slot.p_part);
                    debug_assert!(v < slot.m);
                    v
                })
                .collect(),
        )
    }

    /// `(index in A, index in P)` for each index of `G`.
    pub fn index_table(&self) -> Vec<(usize, usize)> {
        self.g
            .elements()
            .map(|g| {
                let (a, b) = self.split(&g);
                (self.a.index_of(&a), self.p_group.index_of(&b))
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grp(s: &str) -> AbelianGroup {
        AbelianGroup::parse(s).unwrap()
    }

    #[test]
    fn parsing() {
        assert_eq!(grp("Z2xZ4").factors(), &[2, 4]);
        assert!(grp("1").is_trivial());
        assert_eq!(grp("Z7").factors(), &[7]);
        assert!(AbelianGroup::parse("Z1").is_err());
        assert!(AbelianGroup::parse("Z2*Z3").is_err());
        assert!(AbelianGroup::parse("").is_err());
        assert_eq!(grp("Z2xZ4").to_string(), "Z2xZ4");
        assert_eq!(grp("1").to_string(), "1");
        let g = grp("Z2xZ4");
        assert_eq!(g.parse_element("(1,2)").unwrap(), g.element(&[1, 2]).unwrap());
        assert_eq!(g.element(&[1, 2]).unwrap().to_string(), "(1,2)");
        assert_eq!(grp("1").parse_element("()").unwrap(), grp("1").identity());
    }

    #[test]
    fn orders() {
        let g = grp("Z2xZ4");
        assert_eq!(g.element_order(&g.identity()), 1);
        assert_eq!(g.element_order(&g.element(&[1, 2]).unwrap()), 2);
        let z7 = grp("Z7");
        assert_eq!(z7.element_order(&z7.element(&[3]).unwrap()), 7);
        assert_eq!(g.count_order_direct(4).unwrap(), 4);
        assert_eq!(g.count_order_formula(2), 3);
        assert_eq!(g.count_order_formula(4), 4);
        assert_eq!(z7.count_order_direct(7).unwrap(), 6);
        assert_eq!(z7.count_order_formula(1), 1);
        assert_eq!(z7.count_order_formula(3), 0);
    }

    #[test]
    fn order_formula_matches_direct_count() {
        for n in 1..=256u64 {
            for g in all_abelian_groups(n) {
                let mut total = 0;
                for d in crate::arith::divisors(g.exponent()) {
                    let f = g.count_order_formula(d);
                    assert_eq!(f, g.count_order_direct(d).unwrap(), "{g}, d = {d}");
                    total += f;
                }
                assert_eq!(total, g.order());
            }
        }
        // non-canonical factor lists too
        let g = grp("Z6xZ4xZ10");
        for d in crate::arith::divisors(g.exponent()) {
            assert_eq!(g.count_order_formula(d), g.count_order_direct(d).unwrap());
        }
    }

    #[test]
    fn group_enumeration() {
        assert_eq!(all_abelian_groups(1).len(), 1);
        assert_eq!(all_abelian_groups(8).len(), 3);
        assert_eq!(all_abelian_groups(16).len(), 5);
        assert_eq!(all_abelian_groups(72).len(), 6);
        for g in all_abelian_groups(72) {
            assert_eq!(g.order(), 72);
            let f = g.factors();
            assert!(f.windows(2).all(|w| w[1] % w[0] == 0));
        }
        assert_eq!(grp("Z2xZ3").invariant_factors(), vec![6]);
        assert_eq!(grp("Z4xZ2xZ3").invariant_factors(), vec![2, 12]);
    }

    #[test]
    fn sylow() {
        let s = grp("Z12").sylow_decompose(2);
        assert_eq!(s.complement().factors(), &[3]);
        assert_eq!(s.sylow().factors(), &[4]);
        let s = grp("Z7").sylow_decompose(2);
        assert_eq!(s.complement().factors(), &[7]);
        assert!(s.sylow().is_trivial());
        let s = grp("Z2xZ4").sylow_decompose(2);
        assert!(s.complement().is_trivial());
        for spec in ["Z12", "Z6xZ10", "Z2xZ3xZ9", "Z36xZ6", "Z5xZ25xZ7"] {
            let g = grp(spec);
            for p in [2, 3, 5, 7] {
                let split = g.sylow_decompose(p);
                assert_eq!(split.complement().order() * split.sylow().order(), g.order());
                assert_ne!(split.complement().order() % p, 0);
                let mut seen = std::collections::HashSet::new();
                for x in g.elements() {
                    let (a, b) = split.split(&x);
                    assert_eq!(split.join(&a, &b), x);
                    assert!(seen.insert((a, b)));
                }
            }
        }
    }

    #[test]
    fn gamma_values() {
        let g = grp("Z2xZ4");
        let h = g.element(&[1, 1]).unwrap();
        let b = g.element(&[1, 2]).unwrap();
        assert_eq!(g.gamma(&h, &b), 0);
        assert_eq!(g.gamma(&g.identity(), &b), 0);
        let z7 = grp("Z7");
        assert_eq!(z7.gamma(&z7.element(&[3]).unwrap(), &z7.element(&[2]).unwrap()), 6);
        let g = grp("Z3xZ5xZ6");
        for h in g.elements().step_by(7) {
            for b in g.elements().step_by(5) {
                assert_eq!(g.gamma(&h, &b), g.gamma(&b, &h));
                for c in g.elements().step_by(31) {
                    let lhs = g.gamma(&h, &g.add(&b, &c));
                    assert_eq!(lhs, (g.gamma(&h, &b) + g.gamma(&h, &c)) % g.exponent());
                }
            }
        }
    }

    #[test]
    fn indices() {
        let g = grp("Z3xZ4x Z2".replace(' ', "").as_str());
        for (i, x) in g.elements().enumerate() {
            assert_eq!(g.index_of(&x), i);
            assert_eq!(g.neg_index(i), g.index_of(&g.neg(&x)));
            for (j, y) in g.elements().enumerate() {
                assert_eq!(g.add_indices(i, j), g.index_of(&g.add(&x, &y)));
            }
        }
        let v: Vec<_> = g.elements().collect();
        assert!(v.windows(2).all(|w| w[0] < w[1]));
    }
}

//! `q`-cyclotomic classes of a `p'`-group, their Euclidean / Hermitian types,
//! and the good-pair classification behind `chi` and `lambda`.

use std::fmt;

use num_integer::Integer;

use crate::abelian_group::{AbelianGroup, GroupElement};
use crate::arith::{as_prime_power, multiplicative_order, pow_mod};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EuclideanType {
    I,
    II,
    III,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum HermitianType {
    IIPrime,
    IIIPrime,
}

impl fmt::Display for EuclideanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::I => "I",
            Self::II => "II",
            Self::III => "III",
        })
    }
}

impl fmt::Display for HermitianType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::IIPrime => "II'",
            Self::IIIPrime => "III'",
        })
    }
}

/// One orbit `{a, q a, q^2 a, ...}`; element indices are in orbit order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclotomicClass {
    pub representative: usize,
    pub elements: Vec<usize>,
    pub euclidean_type: EuclideanType,
    pub hermitian_type: Option<HermitianType>,
    /// Representative of the class of `-a` when it differs (type III).
    pub euclidean_partner: Option<usize>,
    /// Representative of the class of `-p^(s/2) a` when it differs (type III').
    pub hermitian_partner: Option<usize>,
}

impl CyclotomicClass {
    pub fn cardinality(&self) -> usize {
        self.elements.len()
    }
}

/// How a class (or pair of classes) enters a decomposition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SlotKind {
    /// Type I: component ring `GR(p^r, s)` under the Euclidean form.
    TypeI,
    /// Type II: component ring `GR(p^r, s nu)` under the Hermitian form.
    TypeII,
    /// Type III: a pair of component rings swapped by duality.
    PairIII,
    /// Type II' (Hermitian decomposition).
    TypeIIPrime,
    /// Type III' (Hermitian decomposition).
    PairIIIPrime,
}

impl SlotKind {
    pub fn is_pair(self) -> bool {
        matches!(self, Self::PairIII | Self::PairIIIPrime)
    }
}

/// One factor of a decomposition: a class index, plus the partner class for pairs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Slot {
    pub kind: SlotKind,
    pub class: usize,
    pub partner: Option<usize>,
}

/// Partition of `A` into `q`-cyclotomic classes.
#[derive(Clone, Debug)]
pub struct ClassPartition {
    group: AbelianGroup,
    p: u64,
    s: u32,
    q: u64,
    classes: Vec<CyclotomicClass>,
    class_of_element: Vec<usize>,
}

impl ClassPartition {
    /// Classes of `group` under multiplication by `q = p^s`.
    pub fn new(group: &AbelianGroup, q: u64) -> Result<Self> {
        let (p, s) = as_prime_power(q)
            .ok_or_else(|| Error::InvalidParameter(format!("{q} is not a prime power")))?;
        if group.order().is_multiple_of(p) {
            return Err(Error::NotCoprime {
                p,
                order: group.order(),
            });
        }
        let n = group.order() as usize;
        let half = (s % 2 == 0).then(|| p.pow(s / 2));
        let mut class_of_element = vec![usize::MAX; n];
        let mut orbits: Vec<Vec<usize>> = Vec::new();
        for start in 0..n {
            if class_of_element[start] != usize::MAX {
                continue;
            }
            let orbit = orbit_indices(group, q, start);
            for &i in &orbit {
                class_of_element[i] = orbits.len();
            }
            orbits.push(orbit);
        }
        let classes = orbits
            .iter()
            .map(|orbit| {
                let a = orbit[0];
                let neg = group.neg_index(a);
                let neg_class = class_of_element[neg];
                let own = class_of_element[a];
                let euclidean_type = if neg == a {
                    EuclideanType::I
                } else if neg_class == own {
                    EuclideanType::II
                } else {
                    EuclideanType::III
                };
                let (hermitian_type, hermitian_partner) = match half {
                    Some(h) => {
                        let twisted = class_of_element[group.scale_index(h, neg)];
                        if twisted == own {
                            (Some(HermitianType::IIPrime), None)
                        } else {
                            (Some(HermitianType::IIIPrime), Some(orbits[twisted][0]))
                        }
                    }
                    None => (None, None),
                };
                CyclotomicClass {
                    representative: a,
                    elements: orbit.clone(),
                    euclidean_type,
                    hermitian_type,
                    euclidean_partner: (euclidean_type == EuclideanType::III)
                        .then(|| orbits[neg_class][0]),
                    hermitian_partner,
                }
            })
            .collect();
        Ok(Self {
            group: group.clone(),
            p,
            s,
            q,
            classes,
            class_of_element,
        })
    }

    /// Convenience for `q = p^s`.
    pub fn with_ring(group: &AbelianGroup, p: u64, s: u32) -> Result<Self> {
        Self::new(group, p.pow(s))
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn s(&self) -> u32 {
        self.s
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn classes(&self) -> &[CyclotomicClass] {
        &self.classes
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    /// Index (into `classes`) of the class containing the element with this index.
    pub fn class_index_of(&self, element: usize) -> usize {
        self.class_of_element[element]
    }

    pub fn class_containing(&self, element: usize) -> &CyclotomicClass {
        &self.classes[self.class_of_element[element]]
    }

    /// `(t_I, t_II, t_III)`, with `t_III` counting pairs.
    pub fn euclidean_counts(&self) -> (usize, usize, usize) {
        let count = |t| self.classes.iter().filter(|c| c.euclidean_type == t).count();
        (
            count(EuclideanType::I),
            count(EuclideanType::II),
            count(EuclideanType::III) / 2,
        )
    }

    /// `(t_II', t_III')`, with `t_III'` counting pairs; `None` when `s` is odd.
    pub fn hermitian_counts(&self) -> Option<(usize, usize)> {
        if !self.s.is_multiple_of(2) {
            return None;
        }
        let count = |t| {
            self.classes
                .iter()
                .filter(|c| c.hermitian_type == Some(t))
                .count()
        };
        Some((count(HermitianType::IIPrime), count(HermitianType::IIIPrime) / 2))
    }

    /// Slots in the order type I, type II, type III pairs; pairs are stored once,
    /// keyed by the class with the smaller representative.
    pub fn euclidean_layout(&self) -> Vec<Slot> {
        let mut slots = Vec::new();
        for (kind, ty) in [(SlotKind::TypeI, EuclideanType::I), (SlotKind::TypeII, EuclideanType::II)] {
            for (i, c) in self.classes.iter().enumerate() {
                if c.euclidean_type == ty {
                    slots.push(Slot { kind, class: i, partner: None });
                }
            }
        }
        for (i, c) in self.classes.iter().enumerate() {
            if let Some(rep) = c.euclidean_partner {
                if rep > c.representative {
                    slots.push(Slot {
                        kind: SlotKind::PairIII,
                        class: i,
                        partner: Some(self.class_of_element[rep]),
                    });
                }
            }
        }
        slots
    }

    /// Slots in the order type II', type III' pairs.
    pub fn hermitian_layout(&self) -> Result<Vec<Slot>> {
        if !self.s.is_multiple_of(2) {
            return Err(Error::OddDegree(self.s));
        }
        let mut slots = Vec::new();
        for (i, c) in self.classes.iter().enumerate() {
            if c.hermitian_type == Some(HermitianType::IIPrime) {
                slots.push(Slot { kind: SlotKind::TypeIIPrime, class: i, partner: None });
            }
        }
        for (i, c) in self.classes.iter().enumerate() {
            if let Some(rep) = c.hermitian_partner {
                if rep > c.representative {
                    slots.push(Slot {
                        kind: SlotKind::PairIIIPrime,
                        class: i,
                        partner: Some(self.class_of_element[rep]),
                    });
                }
            }
        }
        Ok(slots)
    }
}

fn orbit_indices(group: &AbelianGroup, q: u64, start: usize) -> Vec<usize> {
    let mut orbit = vec![start];
    let mut cur = group.scale_index(q, start);
    while cur != start {
        orbit.push(cur);
        cur = group.scale_index(q, cur);
    }
    orbit
}

/// The class `S_q(a)` as group elements in orbit order.
pub fn class_of(group: &AbelianGroup, q: u64, a: &GroupElement) -> Result<Vec<GroupElement>> {
    if q.gcd(&group.order()) != 1 {
        let (p, _) = as_prime_power(q)
            .ok_or_else(|| Error::InvalidParameter(format!("{q} is not a prime power")))?;
        return Err(Error::NotCoprime { p, order: group.order() });
    }
    Ok(orbit_indices(group, q, group.index_of(a))
        .into_iter()
        .map(|i| group.element_at(i))
        .collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PairClass {
    OddlyGood,
    EvenlyGoodOnly,
    Bad,
}

impl fmt::Display for PairClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::OddlyGood => "oddly_good",
            Self::EvenlyGoodOnly => "evenly_good_only",
            Self::Bad => "bad",
        })
    }
}

fn check_pair(j: u64, q: u64) -> Result<()> {
    if j == 0 || j.gcd(&q) != 1 {
        return Err(Error::InvalidParameter(format!("gcd({j}, {q}) must be 1")));
    }
    Ok(())
}

/// Whether `j` divides `q^t + 1` for some odd `t`, only for even `t`, or never.
pub fn pair_class(j: u64, q: u64) -> Result<PairClass> {
    check_pair(j, q)?;
    if j <= 2 {
        return Ok(PairClass::OddlyGood);
    }
    let e = multiplicative_order(q, j);
    if !e.is_multiple_of(2) || pow_mod(q, e / 2, j) != j - 1 {
        return Ok(PairClass::Bad);
    }
    // solutions are t = e/2 (mod e), all of the parity of e/2
    Ok(if (e / 2) % 2 == 1 {
        PairClass::OddlyGood
    } else {
        PairClass::EvenlyGoodOnly
    })
}

/// Oracle for `pair_class`: scans `t = 1..=2 ord_j(q)`.
pub fn pair_class_by_scan(j: u64, q: u64) -> Result<PairClass> {
    check_pair(j, q)?;
    let e = multiplicative_order(q, j);
    let (mut odd, mut even) = (false, false);
    for t in 1..=2 * e {
        if (pow_mod(q, t, j) + 1).is_multiple_of(j) {
            if t % 2 == 1 {
                odd = true;
            } else {
                even = true;
            }
        }
    }
    Ok(match (odd, even) {
        (true, _) => PairClass::OddlyGood,
        (false, true) => PairClass::EvenlyGoodOnly,
        _ => PairClass::Bad,
    })
}

/// 0 if `(j, q)` is good, 1 otherwise.
pub fn chi(j: u64, q: u64) -> Result<u32> {
    Ok(u32::from(pair_class(j, q)? == PairClass::Bad))
}

/// 0 if `(j, q)` is oddly good, 1 otherwise.
pub fn lambda(j: u64, q: u64) -> Result<u32> {
    Ok(u32::from(pair_class(j, q)? != PairClass::OddlyGood))
}

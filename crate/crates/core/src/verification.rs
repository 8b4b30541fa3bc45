//! Formula-versus-oracle checks over every small instance: each closed form
//! or product formula is compared with exhaustive ideal enumeration (or with
//! the componentwise enumeration of the semisimple case).

use std::fmt;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::abelian_group::{all_abelian_groups, AbelianGroup};
use crate::counting::{
    count_codes, exists_self_dual, nc_p2, nea_semisimple, nec_p2, nha_semisimple, nhc_p2, AutoProvider,
};
use crate::decompose::Duality;
use crate::error::Result;
use crate::galois_ring::GaloisRing;
use crate::group_ring::GroupRing;
use crate::ideals::{enumerate_semisimple_selfdual, IdealEngine};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum OracleKind {
    /// Exhaustive enumeration of ideals by join closure.
    JoinClosure,
    /// Enumeration of component ideals in the semisimple decomposition.
    Decomposition,
}

impl fmt::Display for OracleKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::JoinClosure => "join_closure",
            Self::Decomposition => "decomposition",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationRecord {
    /// Which formula is checked, e.g. `nc_p2` or `general_euclidean`.
    pub check: String,
    pub p: u64,
    pub r: u32,
    pub s: u32,
    pub group: String,
    pub formula: String,
    pub oracle: String,
    pub oracle_kind: OracleKind,
    pub status: Status,
    #[serde(skip)]
    pub elapsed_ms: f64,
}

impl VerificationRecord {
    fn sort_key(&self) -> (String, u64, u32, u32, u64, String, OracleKind) {
        let order = AbelianGroup::parse(&self.group).map_or(0, |g| g.order());
        (self.check.clone(), self.p, self.r, self.s, order, self.group.clone(), self.oracle_kind)
    }
}

#[derive(Clone, Debug)]
struct Instance {
    check: &'static str,
    p: u64,
    r: u32,
    s: u32,
    group: AbelianGroup,
    kind: OracleKind,
}

fn ring_size(p: u64, r: u32, s: u32, order: u64) -> Option<u64> {
    let log = u32::try_from(r as u64 * s as u64 * order).ok()?;
    p.checked_pow(log)
}

fn instances(max_ring_size: u64) -> Vec<Instance> {
    let fits = |p, r, s, order| ring_size(p, r, s, order).is_some_and(|n| n <= max_ring_size);
    let mut out = Vec::new();
    let push = |out: &mut Vec<Instance>, check, p, r, s, group: &AbelianGroup, kind| {
        out.push(Instance {
            check,
            p,
            r,
            s,
            group: group.clone(),
            kind,
        })
    };
    for p in [2u64, 3, 5, 7] {
        for s in 1..=4u32 {
            for a in 0..=6u32 {
                let order = p.pow(a);
                if !fits(p, 2, s, order) {
                    break;
                }
                let g = AbelianGroup::cyclic(order).expect("positive order");
                push(&mut out, "nc_p2", p, 2, s, &g, OracleKind::JoinClosure);
                push(&mut out, "nec_p2", p, 2, s, &g, OracleKind::JoinClosure);
                if s % 2 == 0 {
                    push(&mut out, "nhc_p2", p, 2, s, &g, OracleKind::JoinClosure);
                }
            }
            for r in 1..=4u32 {
                for order in 1..=16u64 {
                    if !fits(p, r, s, order) {
                        continue;
                    }
                    for g in all_abelian_groups(order) {
                        for (check, needs_even) in [
                            ("general_all", false),
                            ("general_euclidean", false),
                            ("general_hermitian", true),
                            ("existence_euclidean", false),
                            ("existence_hermitian", true),
                        ] {
                            if !needs_even || s % 2 == 0 {
                                push(&mut out, check, p, r, s, &g, OracleKind::JoinClosure);
                            }
                        }
                        if order % p != 0 {
                            push(&mut out, "semisimple_euclidean", p, r, s, &g, OracleKind::JoinClosure);
                            if s % 2 == 0 {
                                push(&mut out, "semisimple_hermitian", p, r, s, &g, OracleKind::JoinClosure);
                            }
                        }
                    }
                }
            }
        }
    }
    // componentwise oracle: independent of the ring size bound
    for p in [2u64, 3, 5] {
        for r in 1..=4u32 {
            for s in 1..=2u32 {
                for order in 1..=12u64 {
                    if order % p == 0 {
                        continue;
                    }
                    for g in all_abelian_groups(order) {
                        push(&mut out, "semisimple_euclidean", p, r, s, &g, OracleKind::Decomposition);
                        if s % 2 == 0 {
                            push(&mut out, "semisimple_hermitian", p, r, s, &g, OracleKind::Decomposition);
                        }
                    }
                }
            }
        }
    }
    out
}

fn engine(inst: &Instance, bound: u64) -> Result<IdealEngine> {
    let ring = GroupRing::shared(GaloisRing::shared(inst.p, inst.r, inst.s)?, inst.group.clone());
    IdealEngine::with_bound(ring, bound)
}

fn self_dual_count(inst: &Instance, bound: u64, duality: Duality) -> Result<String> {
    Ok(engine(inst, bound)?.self_dual_ideals(duality)?.len().to_string())
}

fn evaluate(inst: &Instance, bound: u64) -> Result<(String, String)> {
    // the cyclic instances are Z_{p^a}
    let exponent_a = || {
        let (mut n, mut e) = (inst.group.order(), 0);
        while n % inst.p == 0 {
            n /= inst.p;
            e += 1;
        }
        e
    };
    let (p, r, s, g) = (inst.p, inst.r, inst.s, &inst.group);
    Ok(match (inst.check, inst.kind) {
        ("nc_p2", _) => (
            nc_p2(p, s, exponent_a())?.to_string(),
            engine(inst, bound)?.enumerate_ideals()?.len().to_string(),
        ),
        ("nec_p2", _) => (nec_p2(p, s, exponent_a())?.to_string(), self_dual_count(inst, bound, Duality::Euclidean)?),
        ("nhc_p2", _) => (nhc_p2(p, s, exponent_a())?.to_string(), self_dual_count(inst, bound, Duality::Hermitian)?),
        ("semisimple_euclidean", OracleKind::JoinClosure) => (
            nea_semisimple(p, r, s, g)?.to_string(),
            self_dual_count(inst, bound, Duality::Euclidean)?,
        ),
        ("semisimple_hermitian", OracleKind::JoinClosure) => (
            nha_semisimple(p, r, s, g)?.to_string(),
            self_dual_count(inst, bound, Duality::Hermitian)?,
        ),
        ("semisimple_euclidean", OracleKind::Decomposition) => (
            nea_semisimple(p, r, s, g)?.to_string(),
            enumerate_semisimple_selfdual(p, r, s, g, Duality::Euclidean, 0)?.count.to_string(),
        ),
        ("semisimple_hermitian", OracleKind::Decomposition) => (
            nha_semisimple(p, r, s, g)?.to_string(),
            enumerate_semisimple_selfdual(p, r, s, g, Duality::Hermitian, 0)?.count.to_string(),
        ),
        ("general_all", _) | ("general_euclidean", _) | ("general_hermitian", _) => {
            let duality = match inst.check {
                "general_all" => None,
                "general_euclidean" => Some(Duality::Euclidean),
                _ => Some(Duality::Hermitian),
            };
            // base counts for P come from the cheapest applicable provider;
            // brute force on P alone is far smaller than the whole ring
            let provider = AutoProvider::new(bound);
            let formula = count_codes(p, r, s, g, duality, &provider)?.count.to_string();
            let e = engine(inst, bound)?;
            let oracle = match duality {
                None => e.enumerate_ideals()?.len().to_string(),
                Some(d) => e.self_dual_ideals(d)?.len().to_string(),
            };
            (formula, oracle)
        }
        ("existence_euclidean", _) | ("existence_hermitian", _) => {
            let duality = if inst.check == "existence_euclidean" {
                Duality::Euclidean
            } else {
                Duality::Hermitian
            };
            (
                exists_self_dual(p, r, s, g, duality)?.to_string(),
                engine(inst, bound)?.find_self_dual(duality)?.is_some().to_string(),
            )
        }
        (other, _) => unreachable!("unknown check {other}"),
    })
}

/// Runs every check whose ring has at most `max_ring_size` elements, in
/// parallel; records come back in canonical order.
pub fn run_verification(max_ring_size: u64) -> Vec<VerificationRecord> {
    let mut records: Vec<VerificationRecord> = instances(max_ring_size)
        .par_iter()
        .map(|inst| {
            let start = Instant::now();
            let (formula, oracle) = match evaluate(inst, max_ring_size) {
                Ok(pair) => pair,
                Err(e) => ("-".to_string(), format!("error: {e}")),
            };
            let status = if formula == oracle { Status::Pass } else { Status::Fail };
            VerificationRecord {
                check: inst.check.to_string(),
                p: inst.p,
                r: inst.r,
                s: inst.s,
                group: inst.group.to_string(),
                formula,
                oracle,
                oracle_kind: inst.kind,
                status,
                elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
            }
        })
        .collect();
    records.sort_by_key(VerificationRecord::sort_key);
    records
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_bound_passes() {
        let records = run_verification(256);
        assert!(records.len() > 50);
        let failures: Vec<_> = records.iter().filter(|r| r.status == Status::Fail).collect();
        assert!(failures.is_empty(), "{failures:#?}");
        let keys: Vec<_> = records.iter().map(VerificationRecord::sort_key).collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
    }
}

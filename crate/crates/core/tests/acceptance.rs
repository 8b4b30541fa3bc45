//! Acceptance criteria 1-8: one PASS/FAIL line each; exits non-zero on any failure.

use std::collections::HashSet;
use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use gr_selfdual::abelian_group::all_abelian_groups;
use gr_selfdual::arith::{multiplicative_order, pow_mod};
use gr_selfdual::counting::{
    exists_self_dual, nc_p2, nea_general, nea_semisimple, nec_length_n, nec_p2, nhc_p2, ClosedFormProvider,
};
use gr_selfdual::cyclotomic::{pair_class, ClassPartition, EuclideanType, HermitianType, PairClass};
use gr_selfdual::decompose::{Decomposer, Dft};
use gr_selfdual::ideals::{construct_self_dual, enumerate_semisimple_selfdual, IdealEngine};
use gr_selfdual::{AbelianGroup, Duality, GaloisRing, GroupRing, GroupRingElement, SplitGroupRing};
use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn group(spec: &str) -> AbelianGroup {
    AbelianGroup::parse(spec).expect("valid group")
}

fn ring(p: u64, r: u32, s: u32, g: &str) -> Arc<GroupRing> {
    GroupRing::shared(GaloisRing::shared(p, r, s).expect("valid ring"), group(g))
}

fn engine(p: u64, r: u32, s: u32, g: &str) -> IdealEngine {
    IdealEngine::new(ring(p, r, s, g)).expect("engine")
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn criterion_1() -> Outcome {
    let mut details = Vec::new();
    for (p, s, a, expected) in [(2, 1, 1, 7u64), (2, 1, 2, 23), (3, 1, 1, 16), (2, 2, 1, 9)] {
        let start = Instant::now();
        let e = engine(p, 2, s, &format!("Z{}", p.pow(a)));
        let found = e.enumerate_ideals().map_err(err)?.len() as u64;
        let elapsed = start.elapsed();
        let formula = nc_p2(p, s, a).map_err(err)?;
        ensure(found == expected && formula == BigUint::from(expected), || {
            format!("(p,s,a)=({p},{s},{a}): enumeration {found}, formula {formula}, expected {expected}")
        })?;
        ensure(elapsed < Duration::from_secs(10), || format!("({p},{s},{a}) took {elapsed:?}"))?;
        details.push(format!("({p},{s},{a})={found}"));
    }
    Ok(details.join(" "))
}

fn criterion_2() -> Outcome {
    let mut details = Vec::new();
    for (p, s, a, expected) in [(2, 1, 1, 1u64), (2, 1, 2, 3), (3, 1, 1, 2)] {
        let e = engine(p, 2, s, &format!("Z{}", p.pow(a)));
        let found = e.self_dual_ideals(Duality::Euclidean).map_err(err)?.len() as u64;
        let formula = nec_p2(p, s, a).map_err(err)?;
        ensure(found == expected && formula == BigUint::from(expected), || {
            format!("({p},{s},{a}): brute force {found}, formula {formula}, expected {expected}")
        })?;
        details.push(format!("({p},{s},{a})={found}"));
    }
    Ok(details.join(" "))
}

fn criterion_3() -> Outcome {
    let e = engine(2, 2, 2, "Z2");
    let found = e.self_dual_ideals(Duality::Hermitian).map_err(err)?.len();
    let formula = nhc_p2(2, 2, 1).map_err(err)?;
    ensure(found == 3 && formula == BigUint::from(3u32), || {
        format!("GR(4,2)[Z2]: brute force {found}, formula {formula}")
    })?;
    Ok(format!("GR(4,2)[Z2] Hermitian self-dual = {found}"))
}

fn criterion_4() -> Outcome {
    let z7 = group("Z7");
    let formula = nea_semisimple(2, 2, 1, &z7).map_err(err)?;
    let dec = enumerate_semisimple_selfdual(2, 2, 1, &z7, Duality::Euclidean, 16).map_err(err)?;
    ensure(formula == BigUint::from(3u32) && dec.count == formula, || {
        format!("Z4[Z7]: formula {formula}, decomposition {}", dec.count)
    })?;

    let z2 = group("Z2");
    let formula = nea_semisimple(3, 2, 1, &z2).map_err(err)?;
    let e = engine(3, 2, 1, "Z2");
    ensure(e.ring().size() == BigUint::from(81u32), || "Z9[Z2] should have 81 elements".into())?;
    let brute = e.self_dual_ideals(Duality::Euclidean).map_err(err)?.len();
    ensure(formula == BigUint::from(1u32) && brute == 1, || {
        format!("Z9[Z2]: formula {formula}, brute force {brute}")
    })?;

    for (p, r, g) in [(3, 1, "Z2"), (2, 3, "Z3")] {
        let formula = nea_semisimple(p, r, 1, &group(g)).map_err(err)?;
        let brute = engine(p, r, 1, g).self_dual_ideals(Duality::Euclidean).map_err(err)?.len();
        ensure(formula == BigUint::from(0u32) && brute == 0, || {
            format!("GR({p}^{r},1)[{g}]: formula {formula}, brute force {brute}")
        })?;
    }
    for r in [1, 3, 5] {
        for g in ["Z3", "Z7", "Z3xZ3", "Z15"] {
            let v = nea_semisimple(2, r, 1, &group(g)).map_err(err)?;
            ensure(v == BigUint::from(0u32), || format!("r={r}, {g}: odd r gave {v}"))?;
        }
    }
    Ok("Z4[Z7]=3 (formula = decomposition), Z9[Z2]=1 (81 elements), odd r -> 0".into())
}

fn criterion_5() -> Outcome {
    let start = Instant::now();
    let report = nea_general(2, 2, 1, &group("Z3"), &group("Z2"), &ClosedFormProvider).map_err(err)?;
    let e = engine(2, 2, 1, "Z6");
    ensure(e.ring().size() == BigUint::from(4096u32), || "Z4[Z6] should have 4096 elements".into())?;
    let brute = e.self_dual_ideals(Duality::Euclidean).map_err(err)?.len();
    let length_n = nec_length_n(2, 1, 6).map_err(err)?.count;
    let elapsed = start.elapsed();
    ensure(
        report.count == BigUint::from(3u32) && BigUint::from(brute) == report.count && length_n == report.count,
        || format!("general {}, brute force {brute}, length-n formula {length_n}", report.count),
    )?;
    ensure(elapsed < Duration::from_secs(60), || format!("took {elapsed:?}"))?;
    Ok(format!("general = brute force (4096 elements) = length-6 formula = 3 in {:.1?}", elapsed))
}

fn criterion_6() -> Outcome {
    let (mut checked, mut brute_checked, mut positive) = (0, 0, 0);
    for p in [2u64, 3, 5] {
        for r in 1..=3u32 {
            for order in 1..=8u64 {
                for g in all_abelian_groups(order) {
                    for (s, duality) in [(1, Duality::Euclidean), (2, Duality::Hermitian)] {
                        let exists = exists_self_dual(p, r, s, &g, duality).map_err(err)?;
                        let full = GroupRing::shared(GaloisRing::shared(p, r, s).map_err(err)?, g.clone());
                        let e = IdealEngine::new(full).map_err(err)?;
                        if e.within_bound() {
                            let found = e.find_self_dual(duality).map_err(err)?.is_some();
                            ensure(found == exists, || {
                                format!("GR({p}^{r},{s})[{g}] {duality}: predicate {exists}, brute force {found}")
                            })?;
                            brute_checked += 1;
                        }
                        match construct_self_dual(p, r, s, &g, duality) {
                            Ok(code) => {
                                ensure(exists, || format!("construction succeeded for negative ({p},{r},{s},{g})"))?;
                                let ideal = code.ideal.as_ref().ok_or("construction not materialised")?;
                                let e = IdealEngine::new(code.ring.clone()).map_err(err)?;
                                ensure(e.is_self_dual(ideal, duality).map_err(err)?, || {
                                    format!("construction not self-dual for GR({p}^{r},{s})[{g}] {duality}")
                                })?;
                                positive += 1;
                            }
                            Err(e) => ensure(!exists, || format!("construction failed for ({p},{r},{s},{g}): {e}"))?,
                        }
                        checked += 1;
                    }
                }
            }
        }
    }
    Ok(format!(
        "{checked} instances, {brute_checked} brute-forced within bound, {positive} constructions self-dual"
    ))
}

fn property_isomorphisms(rng: &mut ChaCha8Rng) -> Result<usize, String> {
    let configs: [(u64, u32, u32, &str); 10] = [
        (2, 2, 1, "Z3"),
        (2, 2, 1, "Z7"),
        (2, 2, 2, "Z5"),
        (2, 3, 2, "Z3xZ3"),
        (3, 2, 1, "Z2xZ4"),
        (3, 2, 2, "Z8"),
        (2, 2, 1, "Z15"),
        (5, 2, 1, "Z6"),
        (2, 1, 2, "Z21"),
        (3, 3, 2, "Z10"),
    ];
    let mut checks = 0;
    for (p, r, s, g) in configs {
        let base = ring(p, r, s, g);
        let dft = Dft::new(base.clone()).map_err(err)?;
        let dec = Decomposer::new(base.clone()).map_err(err)?;
        let big = dft.transform_ring().clone();
        let mut dualities = vec![Duality::Euclidean];
        if s % 2 == 0 {
            dualities.push(Duality::Hermitian);
        }
        for _ in 0..100 {
            let (u, v) = (base.random(rng), base.random(rng));
            let (fu, fv) = (dft.forward(&u), dft.forward(&v));
            let fuv = dft.forward(&base.mul(&u, &v));
            let fsum = dft.forward(&base.add(&u, &v));
            for h in 0..base.len() {
                ensure(fuv[h] == big.mul(&fu[h], &fv[h]) && fsum[h] == big.add(&fu[h], &fv[h]), || {
                    format!("DFT not a homomorphism on {base}")
                })?;
            }
            ensure(dft.inverse(&fu).map_err(err)? == u, || format!("DFT round trip fails on {base}"))?;
            for &duality in &dualities {
                let (du, dv) = (dec.decompose(&u, duality).map_err(err)?, dec.decompose(&v, duality).map_err(err)?);
                let duv = dec.decompose(&base.mul(&u, &v), duality).map_err(err)?;
                let dsum = dec.decompose(&base.add(&u, &v), duality).map_err(err)?;
                ensure(
                    duv == dec.mul_components(&du, &dv).map_err(err)?
                        && dsum == dec.add_components(&du, &dv).map_err(err)?
                        && dec.recompose(&du).map_err(err)? == u,
                    || format!("{duality} decomposition not an isomorphism on {base}"),
                )?;
            }
            checks += 1;
        }
    }
    // Phi over rings with non-trivial Sylow subgroup
    for (p, r, s, g) in [
        (2, 2, 1, "Z6"),
        (2, 1, 2, "Z12"),
        (3, 2, 1, "Z6"),
        (3, 1, 2, "Z3xZ6"),
        (2, 2, 1, "Z2xZ10"),
        (5, 1, 1, "Z10"),
        (2, 3, 1, "Z4xZ3"),
        (3, 2, 2, "Z9"),
        (2, 1, 1, "Z2xZ2xZ7"),
        (7, 1, 1, "Z14"),
    ] {
        let full = ring(p, r, s, g);
        let split = SplitGroupRing::new(full.clone());
        for _ in 0..100 {
            let (u, v) = (full.random(rng), full.random(rng));
            let (pu, pv) = (split.phi(&u), split.phi(&v));
            ensure(
                split.phi(&full.mul(&u, &v)) == split.mul(&pu, &pv)
                    && split.phi(&full.add(&u, &v)) == split.add(&pu, &pv)
                    && split.phi_inverse(&pu) == u,
                || format!("Phi not an isomorphism on {full}"),
            )?;
            checks += 1;
        }
    }
    Ok(checks)
}

fn property_duals() -> Result<usize, String> {
    let mut ideals_checked = 0;
    for (p, r, s, g) in [
        (2, 2, 1, "Z2"),
        (2, 2, 1, "Z4"),
        (2, 1, 1, "Z2xZ4"),
        (2, 1, 2, "Z2xZ2"),
        (2, 2, 2, "Z2"),
        (3, 2, 1, "Z3"),
        (3, 1, 2, "Z3"),
        (2, 3, 1, "Z3"),
        (2, 2, 1, "Z6"),
        (5, 2, 1, "Z2"),
    ] {
        let e = engine(p, r, s, g);
        let ideals = e.enumerate_ideals().map_err(err)?;
        let set: HashSet<_> = ideals.iter().map(|c| c.basis().clone()).collect();
        ensure(set.len() == ideals.len(), || format!("duplicate ideals in {}", e.ring()))?;
        let mut dualities = vec![Duality::Euclidean];
        if s % 2 == 0 {
            dualities.push(Duality::Hermitian);
        }
        for duality in dualities {
            for c in &ideals {
                let d = e.dual(c, duality).map_err(err)?;
                ensure(
                    set.contains(d.basis())
                        && c.log_size() + d.log_size() == e.ring_log_size()
                        && &e.dual(&d, duality).map_err(err)? == c,
                    || format!("dual property fails in {} ({duality})", e.ring()),
                )?;
                ideals_checked += 1;
            }
        }
    }
    Ok(ideals_checked)
}

fn property_classes() -> Result<usize, String> {
    let mut groups = 0;
    for (p, s) in [(2u64, 1u32), (3, 1), (2, 2), (2, 3), (3, 2)] {
        let q = p.pow(s);
        for n in 1..=100u64 {
            if n % p == 0 {
                continue;
            }
            for g in all_abelian_groups(n) {
                let part = ClassPartition::new(&g, q).map_err(err)?;
                for c in part.classes() {
                    let a = c.representative;
                    let nu = c.cardinality() as u64;
                    let ord = g.element_order(&g.element_at(a));
                    let fail = || format!("{g}, q={q}, a={}", g.element_at(a));
                    ensure(nu == multiplicative_order(q % ord.max(2), ord), fail)?;
                    match c.euclidean_type {
                        EuclideanType::I => ensure(nu == 1 && g.neg_index(a) == a, fail)?,
                        EuclideanType::II => ensure(
                            nu.is_multiple_of(2) && g.neg_index(a) == g.scale_index(pow_mod(q, nu / 2, g.exponent()), a),
                            fail,
                        )?,
                        EuclideanType::III => ensure(!c.elements.contains(&g.neg_index(a)), fail)?,
                    }
                    // type III exactly when (ord, q) is bad
                    let bad = pair_class(ord, q).map_err(err)? == PairClass::Bad;
                    ensure((c.euclidean_type == EuclideanType::III) == bad, fail)?;
                    if s % 2 == 0 {
                        let half = p.pow(s / 2);
                        let target = g.scale_index(half, g.neg_index(a));
                        match c.hermitian_type {
                            Some(HermitianType::IIPrime) => {
                                ensure(nu % 2 == 1 && c.elements.contains(&target), fail)?
                            }
                            Some(HermitianType::IIIPrime) => ensure(!c.elements.contains(&target), fail)?,
                            None => return Err(fail()),
                        }
                        if a != 0 {
                            // type III' exactly when (ord, p^(s/2)) is not oddly good
                            let not_odd = pair_class(ord, half).map_err(err)? != PairClass::OddlyGood;
                            ensure((c.hermitian_type == Some(HermitianType::IIIPrime)) == not_odd, fail)?;
                        }
                    }
                }
                groups += 1;
            }
        }
    }
    Ok(groups)
}

fn property_order_counts() -> Result<usize, String> {
    let mut groups = 0;
    for n in 1..=256u64 {
        for g in all_abelian_groups(n) {
            for d in gr_selfdual::arith::divisors(g.exponent()) {
                let direct = g.count_order_direct(d).map_err(err)?;
                ensure(direct == g.count_order_formula(d), || format!("{g}: order {d}"))?;
            }
            groups += 1;
        }
    }
    Ok(groups)
}

fn criterion_7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let iso = property_isomorphisms(&mut rng)?;
    let duals = property_duals()?;
    let classes = property_classes()?;
    let order_counts = property_order_counts()?;
    Ok(format!(
        "{iso} isomorphism samples, {duals} dual checks, {classes} class partitions, {order_counts} groups for order counts"
    ))
}

/// `x` in `C`, `u` in `C^perp` for a random principal `C`, or unrelated random elements.
fn sample_pair(
    rng: &mut ChaCha8Rng,
    e: &IdealEngine,
    duality: Duality,
    structured: bool,
) -> Result<(GroupRingElement, GroupRingElement), String> {
    let full = e.ring().clone();
    if !structured {
        return Ok((full.random(rng), full.random(rng)));
    }
    let p = full.ring().p();
    let scale = p.pow(rng.gen_range(0..full.ring().r()));
    let gen = full.scale_int(&full.random(rng), scale);
    let c = e.principal(&gen).map_err(err)?;
    let x = full.mul(&full.random(rng), &gen);
    let dual = e.dual(&c, duality).map_err(err)?;
    let n = full.ring().characteristic();
    let mut u = full.zero();
    for row in dual.basis().rows() {
        let v = full.from_flat(row.clone()).map_err(err)?;
        u = full.add(&u, &full.scale_int(&v, rng.gen_range(0..n)));
    }
    Ok((x, u))
}

fn criterion_8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let configs: [(u64, u32, u32, &str, &[Duality]); 5] = [
        (2, 2, 1, "Z6", &[Duality::Euclidean]),
        (2, 1, 1, "Z14", &[Duality::Euclidean]),
        (2, 2, 2, "Z10", &[Duality::Euclidean, Duality::Hermitian]),
        (3, 1, 2, "Z12", &[Duality::Euclidean, Duality::Hermitian]),
        (2, 1, 2, "Z2xZ7", &[Duality::Euclidean, Duality::Hermitian]),
    ];
    let (mut orthogonal, mut not_orthogonal) = (0, 0);
    for (p, r, s, g, dualities) in configs {
        let full = ring(p, r, s, g);
        let split = SplitGroupRing::new(full.clone());
        let dec = Decomposer::new(split.coefficient_ring().clone()).map_err(err)?;
        let e = IdealEngine::new(full.clone()).map_err(err)?;
        let np = split.sylow().order() as usize;
        for &duality in dualities {
            for trial in 0..100 {
                let (x, u) = sample_pair(&mut rng, &e, duality, trial % 2 == 0)?;
                let (px, pu) = (split.phi(&x), split.phi(&u));
                let du = dec.decompose_split(&pu, duality).map_err(err)?;
                let mut pairing_vanishes = true;
                let mut components_vanish = true;
                for b in 0..np {
                    let shifted = split.shift(&px, b);
                    let pairing = match duality {
                        Duality::Euclidean => split.hat_pairing(&shifted, &pu),
                        Duality::Hermitian => split.tilde_pairing(&shifted, &pu).map_err(err)?,
                    };
                    pairing_vanishes &= pairing.is_zero();
                    let dx = dec.decompose_split(&shifted, duality).map_err(err)?;
                    components_vanish &= Decomposer::is_zero(&dec.pairing_components(&dx, &du).map_err(err)?);
                }
                let form_vanishes = (0..full.len()).all(|h| match duality {
                    Duality::Euclidean => full.form_euclidean(&full.shift(&x, h), &u).is_zero(),
                    Duality::Hermitian => full.form_hermitian(&full.shift(&x, h), &u).is_ok_and(|v| v.is_zero()),
                });
                ensure(pairing_vanishes == components_vanish && pairing_vanishes == form_vanishes, || {
                    format!(
                        "{full} {duality}: pairing {pairing_vanishes}, components {components_vanish}, form {form_vanishes}"
                    )
                })?;
                if pairing_vanishes {
                    orthogonal += 1;
                } else {
                    not_orthogonal += 1;
                }
            }
        }
    }
    ensure(orthogonal > 0 && not_orthogonal > 0, || "only one outcome was exercised".into())?;
    Ok(format!("{orthogonal} orthogonal and {not_orthogonal} non-orthogonal pairs agree"))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("ideal counts match the cyclic-code formula", criterion_1),
        ("Euclidean self-dual cyclic counts", criterion_2),
        ("Hermitian self-dual count over GR(4,2)[Z2]", criterion_3),
        ("semisimple counts", criterion_4),
        ("general product formula on Z4[Z6]", criterion_5),
        ("existence sweep and constructions", criterion_6),
        ("property suites", criterion_7),
        ("orthogonality on components", criterion_8),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        match run() {
            Ok(detail) => println!("criterion {}: PASS  {name}: {detail} [{:.1?}]", i + 1, start.elapsed()),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}: {why}", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}

//! Acceptance suite: each test re-runs one published computation end to end,
//! prints a single PASS line with its runtime, and enforces the runtime
//! budget. All arithmetic is exact; every comparison is equality.

use catalan_torsion::audit::{
    c43_exact_order_over_q_zeta12, certify_c25_exception, certify_c43_exception,
    confirm_c43_orbit_is_torsion, find_c25_prime, run_audit, AuditPlan,
};
use catalan_torsion::charjac::{
    find_split_witness, jacobi_sum, point_count_identity_check, split_level, CharacterSpec,
    EtaRange, SplitRoute,
};
use catalan_torsion::descent::{branch_alphas, x_minus_t_image};
use catalan_torsion::exactnum::{rat_int, FieldElem, Poly};
use catalan_torsion::ffield::factor::as_prime_power;
use catalan_torsion::ffield::roots::{all_eth_roots_or_zero, DEFAULT_SEED};
use catalan_torsion::ffield::{make_field, FqField};
use catalan_torsion::gaps::{min_weight_containing, semigroup_from_generators};
use catalan_torsion::scurve::{
    lx_differential_identity, residual_constraint_poly, residual_nth_power, CurveSpec, Pt,
};
use num::BigUint;
use std::time::Instant;

fn field_of_order(q: u64) -> FqField {
    let (p, k) = as_prime_power(&BigUint::from(q)).unwrap();
    make_field(p, k).unwrap()
}

fn report(criterion: &str, start: Instant, budget_s: u64, ok: bool) {
    let dt = start.elapsed();
    println!(
        "ACCEPTANCE {criterion}: {} in {:.2}s (budget {budget_s}s)",
        if ok { "PASS" } else { "FAIL" },
        dt.as_secs_f64()
    );
    assert!(ok, "criterion {criterion} failed");
    assert!(
        dt.as_secs() < budget_s,
        "criterion {criterion} exceeded its {budget_s}s budget ({dt:?})"
    );
}

#[test]
fn criterion_01_split_level_witness_table() {
    let start = Instant::now();
    let mut ok = true;
    for (p, q_ord) in [(5u64, 16u64), (7, 169), (11, 1849), (13, 547)] {
        let field = field_of_order(q_ord);
        let rep = split_level(p, 3, &field, SplitRoute::Both, None, EtaRange::Full).unwrap();
        ok &= rep.level_jacobi == Some(2) && rep.level_eta == Some(2);
    }
    // The first witness found for (5, 3) is 16 itself.
    ok &= find_split_witness(5, 3, 2, 10_000).unwrap() == Some(16);
    report("1 [witness table]", start, 10, ok);
}

#[test]
fn criterion_02_jacobi_eta_equivalence() {
    let start = Instant::now();
    let mut ok = true;
    let mut fields_checked = 0usize;
    for (p, q) in [(5u64, 3u64), (7, 3), (3, 5), (5, 7), (7, 5)] {
        let pq = p * q;
        for q_ord in (1..=5000u64).step_by(pq as usize).skip(1) {
            let Some((pp, kk)) = as_prime_power(&BigUint::from(q_ord)) else {
                continue;
            };
            if pp == p || pp == q {
                continue;
            }
            let field = make_field(pp, kk).unwrap();
            let full =
                split_level(p, q, &field, SplitRoute::Both, None, EtaRange::Full).unwrap();
            let half =
                split_level(p, q, &field, SplitRoute::Eta, None, EtaRange::Half).unwrap();
            ok &= full.level_jacobi == full.level_eta;
            ok &= full.level_eta == half.level_eta;
            assert!(
                ok,
                "disagreement at (p, q, Q) = ({p}, {q}, {q_ord}): {full:?} / {half:?}"
            );
            fields_checked += 1;
        }
    }
    assert!(fields_checked > 150, "only {fields_checked} fields checked");
    report("2 [jacobi = eta, half = full]", start, 120, ok);
}

#[test]
fn criterion_03_jacobi_magnitude_and_point_count() {
    let start = Instant::now();
    let mut ok = true;
    for (p, q, q_ord) in [(3u64, 5u64, 16u64), (5, 3, 31), (3, 7, 43)] {
        let field = field_of_order(q_ord);
        // |J|^2 = Q exactly, for all nontrivial pairs.
        for a in 1..p {
            for b in 1..q {
                let chi1 = CharacterSpec::new(field.clone(), p, a).unwrap();
                let chi2 = CharacterSpec::new(field.clone(), q, b).unwrap();
                let j = jacobi_sum(&chi1, &chi2).unwrap();
                ok &= j.mul(&j.conjugate()).as_rational() == Some(rat_int(q_ord as i64));
            }
        }
        let (brute, jac) = point_count_identity_check(p, q, &field).unwrap();
        ok &= brute == jac;
    }
    report("3 [Jacobi magnitude + point count]", start, 30, ok);
}

#[test]
fn criterion_04_five_curve_audit() {
    let start = Instant::now();
    let mut ok = true;
    for (n, d) in [(2u64, 9u64), (8, 3), (4, 3), (2, 15), (2, 25), (4, 5)] {
        let plan = AuditPlan::catalan(n, d).unwrap();
        let rep = run_audit(&plan, DEFAULT_SEED).unwrap();
        let pass = rep.offenders.is_empty() && rep.contained_in_bound;
        println!(
            "  audit ({n},{d}) at {}: {} candidates, {} offenders, degrees {:?}",
            plan.ell,
            rep.candidate_count,
            rep.offenders.len(),
            rep.degrees
        );
        ok &= pass;
    }
    // The (4, 3) excluded orbit really is 12-torsion at 71 (positive control).
    ok &= confirm_c43_orbit_is_torsion(71).unwrap() == 12;
    report("4 [five-curve audit]", start, 300, ok);
}

#[test]
fn criterion_05_genus1_cover_audits() {
    let start = Instant::now();
    let mut ok = true;
    for which in 0..3usize {
        let plan = AuditPlan::genus1_cover(which).unwrap();
        let rep = run_audit(&plan, DEFAULT_SEED).unwrap();
        println!(
            "  cover {}: {} candidates, {} offenders, degrees {:?}, contained = {}",
            rep.plan,
            rep.candidate_count,
            rep.offenders.len(),
            rep.degrees
        , rep.contained_in_bound);
        // No exceptional 12-torsion outside the zeta-fixed locus, for every
        // variant.
        ok &= rep.offenders.is_empty();
        if plan.containment_claimed {
            // The published containment in F_{47^4} holds for the two curves
            // whose computation the source actually ran.
            ok &= rep.contained_in_bound;
        } else {
            // Recorded discrepancy: the statement-variant curve
            // y^4 = x^3 + x^2 + 1 has base 12-torsion only rational in
            // F_{47^8}, so its candidates genuinely leave F_{47^4}.
            ok &= !rep.contained_in_bound;
            ok &= rep.degrees.iter().all(|&k| 16 % k == 0);
        }
    }
    report("5 [genus-1 cover audits]", start, 60, ok);
}

#[test]
fn criterion_06_c43_exceptional_certificate() {
    let start = Instant::now();
    let cert = certify_c43_exception(&[13, 37]).unwrap();
    let mut ok = cert.pole_order == 12 && cert.vanishing_order == 12 && cert.global_certified;
    for probe in &cert.probes {
        ok &= probe.kills_exact_order && !probe.kills_smaller_a && !probe.kills_smaller_b;
    }
    ok &= cert.probes.len() == 2;
    // And the exact order holds over Q(zeta_12) itself.
    let (exact, smaller_a, smaller_b) = c43_exact_order_over_q_zeta12().unwrap();
    ok &= exact && !smaller_a && !smaller_b;
    report("6 [C_{4,3} certificate]", start, 10, ok);
}

#[test]
fn criterion_07_c25_exceptional_certificate() {
    let start = Instant::now();
    let cert = certify_c25_exception(54001).unwrap();
    let mut ok = cert.killed_by_exact && !cert.killed_by_smaller && cert.killed_by_five;
    // 54001 qualifies as a prime with mu_10, a fifth root of 4 and sqrt 5.
    ok &= find_c25_prime(54001, 54001) == Some(54001);
    report("7 [C_{2,5} certificate]", start, 10, ok);
}

#[test]
fn criterion_08_residual_tests() {
    let start = Instant::now();
    let mut ok = true;
    // f = x^d + 1 forces c = 0 with v = 1 for (n, d) in {(3,5), (5,3), (2,7)}.
    for (n, d) in [(3u64, 5u64), (5, 3), (2, 7)] {
        let mut coeffs = vec![0i64; d as usize + 1];
        coeffs[0] = 1;
        coeffs[d as usize] = 1;
        let f = Poly::from_i64(&rat_int(0), &coeffs);
        let constraint = residual_constraint_poly(n, &f);
        let no_nonzero_c = !constraint.is_zero()
            && (constraint.degree() == 0
                || constraint.coeffs[..constraint.coeffs.len() - 1]
                    .iter()
                    .all(|c| c.is_zero()));
        ok &= no_nonzero_c;
        ok &= residual_nth_power(n, &f, &rat_int(0)) == Some(Poly::from_i64(&rat_int(0), &[1]));
        if n >= 3 {
            ok &= lx_differential_identity(d);
        }
    }
    // y^2 = x^3 + x recovers the solvable quartic 3c^4 + 6c^2 - 1.
    let f = Poly::from_i64(&rat_int(0), &[0, 1, 0, 1]);
    let constraint = residual_constraint_poly(2, &f);
    let quartic = Poly::from_i64(&rat_int(0), &[-1, 0, 6, 0, 3]);
    let proportional = constraint
        .scale(quartic.leading().unwrap())
        == quartic.scale(constraint.leading().unwrap());
    ok &= proportional;
    // Finite-field scans: no admissible c for (3,4) and (2,5) on x^d + x over
    // three good primes each.
    for (n, d, primes) in [(3u64, 4u64, [5u64, 7, 11]), (2, 5, [3, 7, 11])] {
        for p in primes {
            let field = make_field(p, 1).unwrap();
            let mut f_coeffs = vec![field.zero(); d as usize + 1];
            f_coeffs[1] = field.one();
            f_coeffs[d as usize] = field.one();
            let f = Poly::new(f_coeffs);
            for enc in 0..p {
                let c = field.decode(enc);
                ok &= residual_nth_power(n, &f, &c).is_none();
            }
        }
    }
    report("8 [residual tests]", start, 30, ok);
}

#[test]
fn criterion_09_property_suites() {
    let start = Instant::now();
    let mut ok = true;
    // Riemann-Roch dimension N - g + 1 and semigroup gap counts for every
    // coprime (n, d) with n + d <= 12, over fields up to 121.
    let small_fields: Vec<u64> = vec![5, 7, 11, 13, 23, 25, 49, 121, 113];
    for n in 2u64..=10 {
        for d in 2u64..=10 {
            if n + d > 12 || num::integer::gcd(n, d) != 1 {
                continue;
            }
            let s = semigroup_from_generators(&[n, d]).unwrap();
            ok &= s.genus as u64 == (n - 1) * (d - 1) / 2;
            for &q in &small_fields {
                let field = field_of_order(q);
                let Ok(curve) = CurveSpec::catalan(n, d, &field.one()) else {
                    continue; // bad characteristic for this (n, d)
                };
                let g = curve.genus();
                for big_n in (2 * g).max(1)..(2 * g + 4) {
                    ok &= curve.ln_infty_basis(big_n).len() as u64 == big_n - g + 1;
                }
            }
        }
    }
    // Descent norm condition, exhaustively over every point of every curve
    // in the same range whose branch locus splits.
    let mut descent_points = 0usize;
    for &q in &small_fields {
        let field = field_of_order(q);
        for n in 2u64..=10 {
            for d in 2u64..=10 {
                if n + d > 12 || num::integer::gcd(n, d) != 1 || (q - 1) % n != 0 {
                    continue;
                }
                let Ok(curve) = CurveSpec::catalan(n, d, &field.one()) else {
                    continue;
                };
                if branch_alphas(&curve).is_err() {
                    continue;
                }
                for enc in 0..q {
                    let x = field.decode(enc);
                    let v = curve.f().eval(&x);
                    for y in all_eth_roots_or_zero(&v, n) {
                        let img = x_minus_t_image(&curve, &Pt::Affine(x.clone(), y)).unwrap();
                        ok &= img.norm_condition_holds();
                        descent_points += 1;
                    }
                }
            }
        }
    }
    assert!(descent_points > 500, "descent sweep too small: {descent_points}");
    // Weight lower bound instance.
    ok &= min_weight_containing((4, 5), 4).unwrap() >= 2;
    report("9 [property suites]", start, 120, ok);
}

#[test]
fn criterion_10_determinism_across_seeds() {
    let start = Instant::now();
    let mut ok = true;
    // Two full runs of representative scenarios under different
    // equal-degree-factorization seeds must give identical verdicts and
    // identical reports modulo the seed (and wall-clock runtime) fields.
    for plan in [
        AuditPlan::catalan(2, 15).unwrap(),
        AuditPlan::catalan(4, 3).unwrap(),
        AuditPlan::genus1_cover(0).unwrap(),
    ] {
        let rep_a = run_audit(&plan, DEFAULT_SEED).unwrap();
        let rep_b = run_audit(&plan, DEFAULT_SEED ^ 0xdead_beef).unwrap();
        let mut ja = serde_json::to_value(&rep_a).unwrap();
        let mut jb = serde_json::to_value(&rep_b).unwrap();
        for j in [&mut ja, &mut jb] {
            let obj = j.as_object_mut().unwrap();
            obj.remove("seed");
            obj.remove("runtime_ms");
        }
        ok &= ja == jb;
        assert!(ok, "seed-dependent report for {}", plan.label);
    }
    report("10 [determinism]", start, 600, ok);
}

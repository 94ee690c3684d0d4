//! Acceptance suite: one line per criterion, non-zero exit if any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use quadindex::arith::FactorBudget;
use quadindex::batch::{check_tuples, reference_grid, scan, ScanFilter, ScanOptions, ScanRanges, Span, VerifyOptions};
use quadindex::dedekind::{index_divides, Verdict};
use quadindex::fppoly::{discriminant_mod, factorize, reduce, ModPoly};
use quadindex::quadtheorem::{classify_prime, dk_divides, excluded_prime, is_monogenic, CaseLabel, Exclusion, Monogenicity};
use quadindex::zpoly::{discriminant_formula, discriminant_of};
use quadindex::Quadrinomial;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = std::result::Result<String, String>;

fn q(n: u64, a: i64, b: i64, c: i64) -> Quadrinomial {
    Quadrinomial::new(n, a, b, c).unwrap()
}

fn ensure(cond: bool, msg: impl Into<String>) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn factors_of(r: &quadindex::quadtheorem::MonogenicityReport) -> Vec<(u64, u32)> {
    r.factorization.factors.iter().map(|(p, e)| (u64::try_from(p).unwrap(), *e)).collect()
}

fn example_one() -> Check {
    let t = q(6, 4, 1, 3);
    let r = is_monogenic(&t, FactorBudget::default(), 1).map_err(|e| e.to_string())?;
    ensure(r.discriminant.magnitude() == BigInt::from(9u64 * 7561 * 15269).magnitude(), "|D|")?;
    ensure(factors_of(&r) == vec![(3, 2), (7561, 1), (15269, 1)], "factorization of |D|")?;
    let v3 = &r.per_prime[0];
    ensure(v3.p == 3 && v3.verdict == Verdict::Divides, "verdict at 3")?;
    ensure(v3.witness.get("m_bar").map(String::as_str) == Some("x^4 + 2*x^2 + 2*x + 1"), "M mod 3")?;
    let cert = index_divides(&t.expand(), 3, 1).map_err(|e| e.to_string())?;
    ensure(cert.witness().map(|w| w.factor.to_string()) == Some("x + 2".into()), "witness x + 2")?;
    ensure(r.verdict == Monogenicity::NotMonogenic, "monogenic = false")?;
    ensure(r.index() == Some(&BigInt::from(3)), "index = 3")?;
    Ok("|D| = 3^2*7561*15269, 3 divides via (x+2) | M, index 3".into())
}

fn example_two() -> Check {
    let r = is_monogenic(&q(5, 1, 3, 6), FactorBudget::default(), 1).map_err(|e| e.to_string())?;
    ensure(factors_of(&r) == vec![(3, 3), (5, 1), (18691, 1)], "factorization of |D|")?;
    ensure(r.per_prime.iter().all(|v| v.verdict == Verdict::DoesNotDivide), "all primes do not divide")?;
    ensure(r.verdict == Monogenicity::Monogenic, "monogenic = true")?;
    Ok("|D| = 3^3*5*18691, monogenic".into())
}

fn example_three() -> Check {
    let t = q(6, 9, 3, 18);
    let v = classify_prime(&t, 3).map_err(|e| e.to_string())?;
    ensure(v.label == CaseLabel::AllDivide && v.verdict == Verdict::Divides, "case 1 divides at 3")?;
    let r = is_monogenic(&t, FactorBudget::default(), 1).map_err(|e| e.to_string())?;
    ensure(r.verdict == Monogenicity::NotMonogenic, "monogenic = false")?;
    Ok("3 divides via case 1, not monogenic".into())
}

fn example_four() -> Check {
    let t = q(30030, 44100, 143, 7507);
    let want = [
        (2, Exclusion::TwoDividesANotB),
        (3, Exclusion::OddDividesANotB),
        (5, Exclusion::OddDividesANotB),
        (7, Exclusion::OddDividesANotB),
        (11, Exclusion::DividesBAndN),
        (13, Exclusion::DividesBAndN),
        (7507, Exclusion::DividesCAndNMinusTwo),
    ];
    for (p, e) in want {
        let got = excluded_prime(&t, p).map_err(|e| e.to_string())?;
        ensure(got == Some(e), format!("p = {p}: got {got:?}"))?;
    }
    ensure(excluded_prime(&t, 17).map_err(|e| e.to_string())?.is_none(), "17 must not be excluded")?;
    Ok("2,3,5,7,11,13,7507 excluded with expected conditions".into())
}

fn discriminant_identity() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(20240501);
    let mut count = 0;
    for n in 5..=12u64 {
        for _ in 0..500 {
            let mut pick = || loop {
                let v: i64 = rng.random_range(-20..=20);
                if v != 0 {
                    return v;
                }
            };
            let (a, b, c) = (pick(), pick(), pick());
            let t = q(n, a, b, c);
            let formula = discriminant_formula(&t).map_err(|e| e.to_string())?;
            // (-1)^(n(n-1)/2) Res(f, f') for monic f
            let f = t.expand();
            let res = quadindex::zpoly::resultant(&f, &f.derivative()).map_err(|e| e.to_string())?;
            let signed = if (n * (n - 1) / 2) % 2 == 0 { res } else { -res };
            ensure(formula == signed, format!("{t}: {formula} vs {signed}"))?;
            ensure(formula == discriminant_of(&f).map_err(|e| e.to_string())?, "discriminant_of")?;
            count += 1;
        }
    }
    Ok(format!("{count} closed-form values equal the resultant"))
}

fn oracle_equivalence() -> Check {
    let grid = reference_grid();
    let opts = VerifyOptions { seed: 11, prime_bound: 50, ..Default::default() };
    let r = check_tuples(&grid, &opts).map_err(|e| e.to_string())?;
    ensure(r.pairs >= 2000, format!("only {} pairs", r.pairs))?;
    if let Some(m) = r.mismatches.first() {
        return Err(format!("{} mismatches, first {m:?}", r.mismatches.len()));
    }
    let low = r.undercovered(5);
    ensure(low.is_empty(), format!("coverage below 5: {low:?}"))?;
    let least = r.coverage.iter().min_by_key(|(_, v)| **v).map(|(k, v)| format!("{k}: {v}")).unwrap_or_default();
    Ok(format!("{} tuples, {} pairs, 0 mismatches, least covered {least}", r.samples, r.pairs))
}

fn field_discriminant() -> Check {
    let mut count = 0;
    for n in 5..=12u64 {
        for p in [3u64, 5, 7, 11].into_iter().filter(|p| (n - 1) % p == 0) {
            for a in (1..=(n * n) as i64).filter(|a| {
                let k = (n * n) as i64 / a;
                (n * n) as i64 % a == 0 && num_integer::gcd(*a, k) == 1 && a % p as i64 != 0
            }) {
                for b in [1i64, -2, 4, 7, -13] {
                    for m in [1i64, -1, 2, 3] {
                        if b % p as i64 == 0 {
                            continue;
                        }
                        let t = q(n, a, b, m * p as i64);
                        let want = discriminant_mod(&reduce(&t.expand(), p).unwrap()).unwrap() == 0;
                        let got = dk_divides(&t, p).map_err(|e| e.to_string())?;
                        ensure(got == want, format!("{t} at {p}: {got} vs p | D = {want}"))?;
                        count += 1;
                    }
                }
            }
        }
    }
    ensure(count >= 50, format!("only {count} instances"))?;
    Ok(format!("{count} instances agree with p | D"))
}

fn monic_of_degree(p: u64, d: usize) -> Vec<ModPoly> {
    (0..p.pow(d as u32))
        .map(|mut k| {
            let mut c: Vec<u64> = (0..d)
                .map(|_| {
                    let r = k % p;
                    k /= p;
                    r
                })
                .collect();
            c.push(1);
            ModPoly::new(p, c)
        })
        .collect()
}

fn factorization_suite() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut spot = 0;
    for i in 0..1000 {
        let p = [2u64, 3, 5, 7, 11][i % 5];
        let d = rng.random_range(0..=10usize);
        let mut c: Vec<u64> = (0..=d).map(|_| rng.random_range(0..p)).collect();
        c[d] = rng.random_range(1..p);
        let f = ModPoly::new(p, c);
        let fac = factorize(&f, i as u64).map_err(|e| e.to_string())?;
        ensure(fac.product() == f, format!("reconstruction failed for {f:?}"))?;
        for (g, _) in &fac.factors {
            let dg = g.degree().unwrap();
            if p <= 5 && dg <= 8 {
                let reducible = (1..=dg / 2).any(|k| monic_of_degree(p, k).iter().any(|h| h.divides(g)));
                ensure(!reducible, format!("{g:?} is reducible"))?;
                spot += 1;
            }
        }
    }
    Ok(format!("1000 reconstructions, {spot} irreducibility spot checks"))
}

fn determinism() -> Check {
    let r = ScanRanges { n: Span { lo: 5, hi: 6 }, a: Span { lo: -6, hi: 6 }, b: Span { lo: -6, hi: 6 }, c: Span { lo: -6, hi: 6 } };
    let run = |jobs| -> std::result::Result<Vec<u8>, String> {
        let opts = ScanOptions { budget: FactorBudget::default(), seed: 9, jobs, filter: ScanFilter::All };
        let out = scan(&r, &opts).map_err(|e| e.to_string())?;
        let mut v = Vec::new();
        out.write_jsonl(&mut v).map_err(|e| e.to_string())?;
        Ok(v)
    };
    let one = run(1)?;
    let eight = run(8)?;
    let again = run(8)?;
    ensure(one == eight, "jobs=1 and jobs=8 differ")?;
    ensure(eight == again, "repeated runs differ")?;
    let lines = one.iter().filter(|&&b| b == b'\n').count();
    Ok(format!("{lines} lines byte-identical across jobs=1, jobs=8 and a rerun"))
}

fn main() -> ExitCode {
    type Criterion = (&'static str, fn() -> Check, Option<Duration>);
    let criteria: [Criterion; 9] = [
        ("example 1 reproduction", example_one, Some(Duration::from_secs(1))),
        ("example 2 reproduction", example_two, Some(Duration::from_secs(1))),
        ("example 3 reproduction", example_three, Some(Duration::from_secs(1))),
        ("example 4 exclusions", example_four, Some(Duration::from_secs(1))),
        ("discriminant identity", discriminant_identity, Some(Duration::from_secs(60))),
        ("oracle equivalence", oracle_equivalence, Some(Duration::from_secs(300))),
        ("field discriminant criterion", field_discriminant, None),
        ("F_p factorization", factorization_suite, Some(Duration::from_secs(30))),
        ("scan determinism", determinism, None),
    ];
    let mut failed = 0;
    for (i, (name, run, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let took = start.elapsed();
        let outcome = match (outcome, limit) {
            (Ok(msg), Some(l)) if took > *l => Err(format!("{msg}; took {took:.2?}, limit {l:?}")),
            (o, _) => o,
        };
        match outcome {
            Ok(msg) => println!("criterion {}: PASS  {name} ({took:.2?}) {msg}", i + 1),
            Err(msg) => {
                failed += 1;
                println!("criterion {}: FAIL  {name} ({took:.2?}) {msg}", i + 1);
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

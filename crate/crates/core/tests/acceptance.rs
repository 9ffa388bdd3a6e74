//! Acceptance suite: one line per criterion, non-zero exit if any fails.
//!
//! Run with `cargo test -p moddiag --test acceptance`.

use std::process::Command;
use std::time::{Duration, Instant};

use moddiag::cohomology::subsets;
use moddiag::exact::rat;
use moddiag::grading::count_admissible;
use moddiag::{
    admissible_degrees, class_of_cycle, class_of_twist, filter_top, integrate, kunneth_component, modified_diagonal,
    mult_pushforward_all, mult_pushforward_factor, proj_pushforward, profile_support, prove_empty_pigeonhole,
    pullback, pushforward, wedge, AmbientParams, ExtClass, ExtMonomial, FormalCycle, LinearMapSpec, MultiDegree,
    PigeonholeOutcome,
};
use num_traits::Pow;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<(), String>;

fn amb(g: usize, m: usize) -> AmbientParams {
    AmbientParams::new(g as i64, m as i64).unwrap()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn lemma_i() -> Check {
    for g in 1..=5 {
        for m in 1..=8 {
            let gamma = modified_diagonal(amb(g, m));
            for n in [-3i64, -2, 2, 3] {
                let pushed = mult_pushforward_all(&gamma, n).map_err(|e| e.to_string())?;
                let expected = gamma.scale(&rat(Pow::pow(n, (2 * g) as u32)));
                ensure(pushed == expected, || format!("g={g} m={m} n={n}"))?;
            }
        }
    }
    Ok(())
}

fn lemma_ii() -> Check {
    for g in 1..=5 {
        for m in 2..=8 {
            let gamma = modified_diagonal(amb(g, m));
            for j in 1..=m {
                let pushed = proj_pushforward(&gamma, j).map_err(|e| e.to_string())?;
                ensure(pushed.is_zero(), || format!("g={g} m={m} j={j}: {pushed}"))?;
            }
        }
    }
    Ok(())
}

fn survivors(g: usize, m: usize) -> Vec<MultiDegree> {
    let nu = 2 * g * (m - 1);
    filter_top(&admissible_degrees(g, m, nu).unwrap(), g)
}

fn pigeonhole_boundary() -> Check {
    for g in 1..=3 {
        for m in [2 * g + 1, 2 * g + 2] {
            ensure(survivors(g, m).is_empty(), || format!("g={g} m={m}: survivors remain"))?;
            ensure(prove_empty_pigeonhole(g, m).is_proof(), || format!("g={g} m={m}: no proof"))?;
        }
        let m = 2 * g;
        let expected = vec![MultiDegree::new(vec![2 * g - 1; m], g).unwrap()];
        ensure(survivors(g, m) == expected, || format!("g={g} m={m}: {:?}", survivors(g, m)))?;
        for m in 1..=2 * g + 3 {
            let found = survivors(g, m);
            let agrees = match prove_empty_pigeonhole(g, m) {
                PigeonholeOutcome::Proof { .. } => found.is_empty(),
                PigeonholeOutcome::Counterexample { survivor, survivor_count } => {
                    found.contains(&survivor) && survivor_count == found.len().to_string()
                }
            };
            ensure(agrees, || format!("g={g} m={m}: prover and enumeration disagree"))?;
        }
    }
    Ok(())
}

fn gamma_class(g: usize, m: usize) -> Result<ExtClass, String> {
    class_of_cycle(&modified_diagonal(amb(g, m))).map_err(|e| e.to_string())
}

fn cohomology_shadow() -> Check {
    let start = Instant::now();
    for m in 3..=5 {
        let c = gamma_class(1, m)?;
        ensure(c.is_zero(), || format!("g=1 m={m}: class is nonzero"))?;
    }
    let c = gamma_class(1, 2)?;
    ensure(!c.is_zero(), || "g=1 m=2: class vanishes".into())?;
    ensure(profile_support(&c).into_iter().all(|p| survivors(1, 2).contains(&p)), || "g=1 m=2: support".into())?;
    let genus_one = start.elapsed();
    ensure(genus_one < Duration::from_secs(1), || format!("genus one took {genus_one:?}"))?;

    for m in 2..=4 {
        let c = gamma_class(2, m)?;
        ensure(!c.is_zero(), || format!("g=2 m={m}: class vanishes"))?;
        let support = profile_support(&c);
        let allowed = survivors(2, m);
        ensure(support.iter().all(|p| allowed.contains(p)), || format!("g=2 m={m}: support {support:?}"))?;
        if m == 4 {
            let expected = vec![MultiDegree::new(vec![3; 4], 2).unwrap()];
            ensure(support.into_iter().collect::<Vec<_>>() == expected, || "g=2 m=4: support".into())?;
        }
    }
    let start = Instant::now();
    let c = gamma_class(2, 5)?;
    ensure(c.is_zero(), || "g=2 m=5: class is nonzero".into())?;
    let t = start.elapsed();
    ensure(t < Duration::from_secs(60), || format!("g=2 m=5 took {t:?}"))
}

fn vanishing_lemma_shadow() -> Check {
    for g in 1..=2 {
        for m in 1..=2 * g + 1 {
            let c = gamma_class(g, m)?;
            let nu = 2 * g * (m - 1);
            for profile in admissible_degrees(g, m, nu).unwrap() {
                if profile.has_top_entry(g) {
                    let part = kunneth_component(&c, &profile).map_err(|e| e.to_string())?;
                    ensure(part.is_zero(), || format!("g={g} m={m} profile {profile}"))?;
                }
            }
            ensure(
                count_admissible(g, m, nu).to_string() == admissible_degrees(g, m, nu).unwrap().len().to_string(),
                || format!("g={g} m={m}: enumeration count"),
            )?;
        }
    }
    Ok(())
}

fn random_cycle(rng: &mut ChaCha8Rng) -> FormalCycle {
    let g = rng.gen_range(1..=2);
    let m = rng.gen_range(1..=4);
    let mut c = FormalCycle::zero(amb(g, m));
    for _ in 0..rng.gen_range(1..=4) {
        let v: Vec<i64> = (0..m).map(|_| rng.gen_range(-3..=3)).collect();
        c.add_raw(&v, rat(rng.gen_range(-3..=3))).unwrap();
    }
    c
}

fn layer_consistency() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0001);
    for trial in 0..200 {
        let c = random_cycle(&mut rng);
        let a = c.ambient();
        let (g, m) = (a.g(), a.m());
        let class = class_of_cycle(&c).map_err(|e| e.to_string())?;
        let err = |what: &str| format!("trial {trial} ({what}): {c}");

        let n = [-3i64, -2, -1, 2, 3][rng.gen_range(0..5)];
        let lhs = class_of_cycle(&mult_pushforward_all(&c, n).unwrap()).unwrap();
        let rhs = pushforward(&LinearMapSpec::uniform_multiplication(m, n).unwrap(), &class).unwrap();
        ensure(lhs == rhs, || err("mult all"))?;

        let j = rng.gen_range(1..=m);
        let lhs = class_of_cycle(&mult_pushforward_factor(&c, j, n).unwrap()).unwrap();
        let mut scalars = vec![1; m];
        scalars[j - 1] = n;
        let rhs = pushforward(&LinearMapSpec::multiplication(&scalars).unwrap(), &class).unwrap();
        ensure(lhs == rhs, || err("mult factor"))?;

        if m > 1 {
            let lhs = class_of_cycle(&proj_pushforward(&c, j).unwrap()).unwrap();
            let rhs = pushforward(&LinearMapSpec::drop_factor(m, j).unwrap(), &class).unwrap();
            ensure(lhs == rhs, || err("projection"))?;
        }

        let v: Vec<i64> = loop {
            let v: Vec<i64> = (0..m).map(|_| rng.gen_range(-3..=3)).collect();
            if v.iter().any(|&x| x != 0) {
                break v;
            }
        };
        let d = rng.gen_range(1..=3i64);
        let scaled: Vec<i64> = v.iter().map(|x| d * x).collect();
        let expected = class_of_twist(&v, a).unwrap().scale(&rat(Pow::pow(d, (2 * g) as u32)));
        ensure(class_of_twist(&scaled, a).unwrap() == expected, || err("gcd scaling"))?;
    }
    Ok(())
}

fn pairing_is_signed_permutation(g: usize, m: usize) -> Check {
    let n = 2 * g * m;
    let top = ExtMonomial::full(n);
    for d in 0..=n {
        let rows: Vec<ExtMonomial> = subsets(n, d).collect();
        let cols: Vec<ExtMonomial> = subsets(n, n - d).collect();
        let mut col_hits = vec![0usize; cols.len()];
        for &mu in &rows {
            let mut hits = 0;
            for (k, &nu) in cols.iter().enumerate() {
                if let Some((sign, product)) = mu.wedge(&nu) {
                    if product == top {
                        ensure(sign == 1 || sign == -1, || format!("g={g} m={m}: sign {sign}"))?;
                        hits += 1;
                        col_hits[k] += 1;
                    }
                }
            }
            ensure(hits == 1, || format!("g={g} m={m} degree {d}: row with {hits} entries"))?;
        }
        ensure(col_hits.iter().all(|&h| h == 1), || format!("g={g} m={m} degree {d}: column"))?;
    }
    Ok(())
}

fn random_class(rng: &mut ChaCha8Rng, ambient: AmbientParams, degree: usize) -> ExtClass {
    let n = 2 * ambient.g() * ambient.m();
    let basis: Vec<ExtMonomial> = subsets(n, degree).collect();
    let terms: Vec<_> = (0..rng.gen_range(1..=3))
        .map(|_| (basis[rng.gen_range(0..basis.len())], rat(rng.gen_range(-3..=3))))
        .collect();
    ExtClass::from_terms(ambient, terms).unwrap()
}

fn random_map(rng: &mut ChaCha8Rng, m: usize) -> LinearMapSpec {
    let nonzero = |rng: &mut ChaCha8Rng| [-3i64, -2, -1, 1, 2, 3][rng.gen_range(0..6)];
    match rng.gen_range(0..3) {
        0 => LinearMapSpec::twisted_diagonal(&(0..m).map(|_| nonzero(rng)).collect::<Vec<_>>()).unwrap(),
        1 if m > 1 => LinearMapSpec::drop_factor(m, rng.gen_range(1..=m)).unwrap(),
        _ => LinearMapSpec::multiplication(&(0..m).map(|_| rng.gen_range(-3..=3)).collect::<Vec<_>>()).unwrap(),
    }
}

fn adjunction_and_pairing() -> Check {
    for g in 1..=2 {
        for m in 1..=3 {
            pairing_is_signed_permutation(g, m)?;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0002);
    for trial in 0..500 {
        let g = rng.gen_range(1..=2);
        let m = rng.gen_range(1..=3);
        let f = random_map(&mut rng, m);
        let (source, target) = (amb(g, f.m_in()), amb(g, f.m_out()));
        let (n_s, n_t) = (2 * g * f.m_in(), 2 * g * f.m_out());
        let a = rng.gen_range(0..=n_s);
        let b = rng.gen_range(0..=n_t);
        let alpha = random_class(&mut rng, source, a);
        let beta = random_class(&mut rng, target, b);
        let pushed = pushforward(&f, &alpha).map_err(|e| e.to_string())?;
        let lhs = integrate(&wedge(&pushed, &beta).unwrap());
        let rhs = integrate(&wedge(&alpha, &pullback(&f, &beta).unwrap()).unwrap());
        ensure(lhs == rhs, || format!("trial {trial}: {f:?} alpha={alpha} beta={beta}"))?;
    }
    Ok(())
}

fn cli_contract() -> Check {
    let run = |args: &[&str]| Command::new(env!("CARGO_BIN_EXE_moddiag")).args(args).output().unwrap();
    let cases: [(&[&str], i32); 3] = [
        (&["verify", "--genus", "1", "--power", "3", "--layers", "formal,grading,cohomology"], 0),
        (&["verify", "--genus", "1", "--power", "2", "--layers", "grading"], 0),
        (&["verify", "--genus", "0", "--power", "2"], 2),
    ];
    for (args, code) in cases {
        let first = run(args);
        ensure(first.status.code() == Some(code), || format!("{args:?}: exit {:?}", first.status.code()))?;
        let second = run(args);
        ensure(first.stdout == second.stdout, || format!("{args:?}: output differs between runs"))?;
    }
    Ok(())
}

fn main() {
    let criteria: [(&str, fn() -> Check, u64); 8] = [
        ("mult(n) pushforward scales the modified diagonal by n^(2g)", lemma_i, 5),
        ("projection pushforwards of the modified diagonal vanish", lemma_ii, 5),
        ("pigeonhole boundary at m = 2g, 2g+1, 2g+2", pigeonhole_boundary, 10),
        ("cohomology class vanishes exactly where predicted", cohomology_shadow, 60),
        ("profiles with a top entry annihilate the class", vanishing_lemma_shadow, 60),
        ("formal and cohomological layers agree on random cycles", layer_consistency, 30),
        ("Poincare pairing and adjunction", adjunction_and_pairing, 30),
        ("verify exit codes and byte-stable certificates", cli_contract, 60),
    ];
    let mut failed = 0;
    for (name, check, limit) in criteria {
        let start = Instant::now();
        let outcome = check();
        let elapsed = start.elapsed();
        let outcome = outcome.and_then(|()| {
            ensure(elapsed < Duration::from_secs(limit), || format!("exceeded {limit} s"))
        });
        match outcome {
            Ok(()) => println!("[PASS] {name} ({:.2} s)", elapsed.as_secs_f64()),
            Err(e) => {
                failed += 1;
                println!("[FAIL] {name} ({:.2} s): {e}", elapsed.as_secs_f64());
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", 8 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}

//! The twelve acceptance criteria, one line each.

#[path = "../../core/tests/support/mod.rs"]
mod support;

use std::process::{Command, ExitCode};

use eggert::algebras::{
    contracted_algebra, example_2_4_algebra, forbidden_word_dims, graded_components,
    tensor_product, truncate_above, truncated_polynomial,
};
use eggert::exactlin::{PrimeField, Subspace};
use eggert::explorer::{root_section_presentations, suite_semigroups, EXAMPLE_2_4_SEED};
use eggert::powermaps::{
    eggert_report, frobenius_matrix, identity_check_4_5, power_dims_profile, root_section,
};
use eggert::semigroups::{
    example_4_1, example_4_2, example_4_3, from_numerical, numerical_quotient, ElementSubset,
    NumericalPresentation, Relation, SemigroupWithZero,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e<E: std::fmt::Display>(err: E) -> String {
    err.to_string()
}

fn gf(p: u64) -> PrimeField {
    PrimeField::new(p).expect("prime")
}

fn truncated_ratio() -> Outcome {
    let mut cases = 0;
    for p in [2u64, 3, 5] {
        for k in 0..=6u64 {
            for r in 0..p {
                let big_n = p * k + r;
                if big_n == 0 {
                    continue;
                }
                let (alg, _) = truncated_polynomial(gf(p), 1, big_n as usize, true).map_err(e)?;
                let rep = eggert_report(&alg, p).map_err(e)?;
                ensure(rep.image_dim as u64 == k, || {
                    format!("p={p} N={big_n}: image {} != {k}", rep.image_dim)
                })?;
                ensure((rep.deficit == 0) == (r == 0), || {
                    format!("p={p} N={big_n}: deficit {}", rep.deficit)
                })?;
                cases += 1;
            }
        }
    }
    Ok(format!("{cases} truncations"))
}

fn tensor() -> Outcome {
    let (r, _) = truncated_polynomial(gf(2), 1, 4, true).map_err(e)?;
    let single = eggert_report(&r, 2).map_err(e)?;
    let t = eggert_report(&tensor_product(&r, &r).map_err(e)?, 2).map_err(e)?;
    ensure(single.image_dim == 2, || {
        format!("image of R is {}", single.image_dim)
    })?;
    ensure(t.dim_r == 16 && t.image_dim == 4, || {
        format!("dim {} image {}", t.dim_r, t.image_dim)
    })?;
    Ok("dim 16, image 4 = 2*2".into())
}

fn forbidden_words() -> Outcome {
    for d in 1..=3usize {
        let dims = forbidden_word_dims(d, 9).map_err(e)?;
        for k in 3..=9usize {
            let want = if k % 2 == 1 { 2 * d } else { d * d + 1 };
            ensure(dims[k - 1] == want, || {
                format!("d={d} degree {k}: {} != {want}", dims[k - 1])
            })?;
            let brute = support::forbidden_word_count(d, k);
            ensure(brute == want, || {
                format!("oracle d={d} degree {k}: {brute}")
            })?;
        }
    }
    Ok("d in 1..=3, degrees 3..=9".into())
}

fn graded_example() -> Outcome {
    let (alg, view) = example_2_4_algebra(gf(5), EXAMPLE_2_4_SEED).map_err(e)?;
    let dims: Vec<usize> = graded_components(&alg, &view)
        .iter()
        .map(|c| c.dim)
        .collect();
    ensure(dims == [4, 3, 4, 3], || format!("GF(5) dims {dims:?}"))?;
    let (r3, v3) = example_2_4_algebra(gf(3), EXAMPLE_2_4_SEED).map_err(e)?;
    let (t, tv) = truncate_above(&r3, &v3, 3).map_err(e)?;
    let frob = frobenius_matrix(&t, 1).map_err(e)?;
    let images = tv
        .indices_of_degree(1)
        .into_iter()
        .map(|i| frob.mul_vec(&t.basis_vector(i)))
        .collect::<Result<Vec<_>, _>>()
        .map_err(e)?;
    let cube = Subspace::from_rows(gf(3), t.dim(), &images).map_err(e)?;
    let r3_dim = tv.indices_of_degree(3).len();
    ensure(cube.dim() == 2 && r3_dim == 4, || {
        format!("cube image {} vs R_3 {r3_dim}", cube.dim())
    })?;
    Ok("GF(5) dims (4,3,4,3); GF(3) cube image 2 < 4".into())
}

fn root_section_suite() -> Outcome {
    let presentations = root_section_presentations();
    ensure(presentations.len() == 50, || {
        format!("{} presentations", presentations.len())
    })?;
    let mut held = 0;
    for pres in &presentations {
        ensure(
            pres.generators.iter().all(|&g| g <= 9) && pres.bound <= 40,
            || format!("{pres:?} out of range"),
        )?;
        let s = from_numerical(pres).map_err(e)?;
        let mut ok = true;
        for p in [2u64, 3] {
            let alg = contracted_algebra(&s, gf(p));
            let w = root_section(&alg).map_err(e)?;
            let d = w.v.dim();
            ok &= power_dims_profile(&alg, &w.v, p as usize)
                .iter()
                .all(|&x| x >= d);
        }
        held += usize::from(ok);
    }
    ensure(held == 50, || format!("{held}/50"))?;
    Ok("50/50 over GF(2) and GF(3)".into())
}

fn small_examples() -> Outcome {
    let p = 5usize;
    for i in 2..=4usize {
        let (s, x) = example_4_1(p, i).map_err(e)?;
        let x = ElementSubset::new(&s, x).map_err(e)?;
        let c = x.power_subset(i as u64).card_nonzero();
        ensure(c == 1, || {
            format!("4.1 i={i}: X^(i) has {c} nonzero elements")
        })?;
    }
    let (s, x) = example_4_2(p, p).map_err(e)?;
    let x = ElementSubset::new(&s, x).map_err(e)?;
    for i in 2..=4usize {
        let c = x.product_subset(i).card_nonzero();
        ensure(c == i + 1, || {
            format!("4.2: X^{i} has {c} nonzero elements")
        })?;
    }
    for (n, q) in [(3usize, 2u64), (7, 5)] {
        let (s, _) = example_4_3(n, q as usize).map_err(e)?;
        let r = contracted_algebra(&s, gf(q));
        let v = r.element(&[("x", 1), ("xy", -1)]).map_err(e)?;
        let fv = frobenius_matrix(&r, 1).map_err(e)?.mul_vec(&v).map_err(e)?;
        ensure(fv.iter().all(|&c| c == 0), || {
            format!("4.3 n={n} p={q}: x - xy not in the kernel")
        })?;
        ensure(r.pow(&v, n as u64).iter().all(|&c| c == 0), || {
            format!("4.3 n={n}: (x - xy)^n != 0")
        })?;
    }
    Ok("i+1 and 1 cardinalities; x - xy in the Frobenius kernel".into())
}

fn identity() -> Outcome {
    for (n, p) in [(2usize, 3u64), (3, 5), (4, 7), (5, 11)] {
        let c = identity_check_4_5(gf(p), n).map_err(e)?;
        ensure(c.holds, || format!("n={n} p={p} fails"))?;
        ensure(
            support::alternating_identity_counterexample(n, p).is_none(),
            || format!("oracle n={n} p={p}"),
        )?;
    }
    Ok("4 of 4 (n,p) pairs".into())
}

fn deficit_ledger() -> Outcome {
    for n in [2u64, 3, 5] {
        // Bounds divisible by n.
        let big_n = 6 * n;
        let s = from_numerical(&NumericalPresentation::new(vec![2, 3], big_n)).map_err(e)?;
        ensure(s.deficit(n) == 1 - n as i64, || {
            format!("(2,3) N={big_n} n={n}: {}", s.deficit(n))
        })?;
        let pres = NumericalPresentation::new(vec![2, 3], big_n)
            .with_relation(Relation::CollapseToZero(big_n - 1));
        let s = from_numerical(&pres).map_err(e)?;
        ensure(s.deficit(n) == 2 - n as i64, || {
            format!("(2,3) collapse N={big_n} n={n}: {}", s.deficit(n))
        })?;
    }
    for n in [2u64, 3] {
        for bound in [11 * n, 22 * n] {
            let s = from_numerical(&NumericalPresentation::new(vec![4, 5], bound)).map_err(e)?;
            let want = 6 * (1 - n as i64);
            ensure(s.deficit(n) == want, || {
                format!("(4,5) N={bound} n={n}: {} != {want}", s.deficit(n))
            })?;
        }
    }
    Ok("-n+1, -n+2 and 6(-n+1)".into())
}

fn named_examples() -> Outcome {
    let gf2 = gf(2);
    let report = |pres: NumericalPresentation| -> Result<(usize, usize, i64), String> {
        let s = from_numerical(&pres).map_err(e)?;
        let r = eggert_report(&contracted_algebra(&s, gf2), 2).map_err(e)?;
        Ok((r.dim_r, r.image_dim, r.deficit))
    };
    for big_n in (4..=20u64).step_by(2) {
        let want = (big_n as usize - 2, (big_n as usize - 2) / 2, 0);
        for rel in [
            Relation::Identify(big_n - 1, big_n),
            Relation::CollapseToZero(big_n - 1),
        ] {
            let got = report(NumericalPresentation::new(vec![2, 3], big_n).with_relation(rel))?;
            ensure(got == want, || format!("(2,3) N={big_n} {rel:?}: {got:?}"))?;
        }
    }
    let (dim, image, deficit) = report(
        NumericalPresentation::new(vec![4, 5], 24).with_relation(Relation::Identify(13, 14)),
    )?;
    ensure(deficit == 0 && 2 * image == dim, || {
        format!("(4,5): dim {dim} image {image}")
    })?;
    let a = report(
        NumericalPresentation::new(vec![2, 5], 14).with_relation(Relation::Identify(11, 12)),
    )?;
    ensure(a == (10, 5, 0), || format!("(2,5): {a:?}"))?;
    let b = report(
        NumericalPresentation::new(vec![3, 7], 24).with_relation(Relation::Identify(13, 14)),
    )?;
    ensure(b == (12, 6, 0), || format!("(3,7): {b:?}"))?;
    Ok(format!(
        "(4,5) computed dim {dim}, image {image} (stated 18/9, see note)"
    ))
}

fn tiny_presentations(count: usize, seed: u64) -> Vec<NumericalPresentation> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    while out.len() < count {
        let a = rng.gen_range(1..6u64);
        let b = rng.gen_range(a + 1..8u64);
        let bound = rng.gen_range(b..14u64);
        let members = support::members_by_sums(&[a, b], bound);
        if members.is_empty() || members.len() > 8 {
            continue;
        }
        let mut pres = NumericalPresentation::new(vec![a, b], bound);
        for _ in 0..rng.gen_range(1..=3) {
            let x = members[rng.gen_range(0..members.len())];
            let y = members[rng.gen_range(0..members.len())];
            pres = pres.with_relation(if rng.gen_bool(0.25) {
                Relation::CollapseToZero(x)
            } else {
                Relation::Identify(x.min(y), x.max(y))
            });
        }
        out.push(pres);
    }
    out
}

fn bridge() -> Outcome {
    let mut semigroups: Vec<(String, SemigroupWithZero)> = suite_semigroups().map_err(e)?;
    for pres in tiny_presentations(20, 12) {
        semigroups.push((format!("{pres:?}"), from_numerical(&pres).map_err(e)?));
    }
    for (name, s) in &semigroups {
        for p in [2u64, 3] {
            let alg = eggert_report(&contracted_algebra(s, gf(p)), p).map_err(e)?;
            ensure(alg.deficit == s.deficit(p), || {
                format!("{name} p={p}: {} vs {}", s.deficit(p), alg.deficit)
            })?;
        }
    }
    Ok(format!("{} semigroups x 2 primes", semigroups.len()))
}

fn determinism() -> Outcome {
    let run = |workers: &str| -> Result<(Vec<u8>, i32), String> {
        let out = Command::new(env!("CARGO_BIN_EXE_eggert"))
            .args([
                "search",
                "--pairs-max",
                "7",
                "--bound-min",
                "1",
                "--bound-max",
                "30",
                "--exponent",
                "2",
            ])
            .args(["--fail-on-positive", "--workers", workers])
            .output()
            .map_err(e)?;
        Ok((out.stdout, out.status.code().unwrap_or(-1)))
    };
    let (one, code1) = run("1")?;
    let (eight, code8) = run("8")?;
    ensure(one == eight, || {
        "outputs differ between 1 and 8 workers".into()
    })?;
    ensure(code1 == code8, || format!("exit codes {code1} vs {code8}"))?;
    let text = String::from_utf8(one).map_err(e)?;
    let summary: serde_json::Value =
        serde_json::from_str(text.lines().last().unwrap_or("{}")).map_err(e)?;
    let max = summary["summary"]["max_deficit"]
        .as_i64()
        .ok_or("no max_deficit")?;
    let total = summary["summary"]["total"].as_u64().unwrap_or(0);
    ensure(max <= 0 && code1 == 0, || {
        format!("max deficit {max}, exit {code1}")
    })?;
    Ok(format!("{total} records byte-identical, max deficit {max}"))
}

fn congruence_oracle() -> Outcome {
    let presentations = tiny_presentations(20, 0xc0de);
    let mut agreed = 0;
    for pres in &presentations {
        let q = numerical_quotient(pres, 100).map_err(e)?;
        if q.classes == support::brute_min_congruence(pres) {
            agreed += 1;
        }
    }
    ensure(agreed == 20, || format!("{agreed}/20"))?;
    Ok("20/20".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 12] = [
        ("truncated-cyclic ratio", truncated_ratio),
        ("tensor multiplicativity", tensor),
        ("forbidden-word dimensions", forbidden_words),
        ("graded example", graded_example),
        ("root-section suite", root_section_suite),
        ("small semigroup examples", small_examples),
        ("alternating identity", identity),
        ("numerical-semigroup deficits", deficit_ledger),
        ("named examples", named_examples),
        ("semigroup/algebra bridge", bridge),
        ("search determinism", determinism),
        ("congruence-closure oracle", congruence_oracle),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail}", k + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {why}", k + 1);
            }
        }
    }
    println!(
        "acceptance: {} of {} passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

//! Acceptance suite: one PASS/FAIL line per criterion. Runs without the
//! libtest harness so lines appear in order; exits nonzero if any criterion
//! fails.

use std::process::Command;
use std::time::{Duration, Instant};

use cubiclat::bounds::{rank_lower_bound, verify_counting_lemma, LemmaVerdict, RankBoundQuery};
use cubiclat::indecomposables::{
    candidates, check_indecomposable, find_certificate, theorem_target, verify_total_positivity, RangeMode,
};
use cubiclat::lattice::{
    count_short_vectors, default_corpus, trace_transfer, verify_count_bound, GramMatrix, OkGramMatrix,
    DEFAULT_PRECISION_BITS,
};
use cubiclat::{CubicOrder, Family, FieldVector, OrderElement};
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn main() {
    let criteria: Vec<(u32, &str, Duration, fn() -> Outcome)> = vec![
        (1, "Shanks lemma-range candidates totally positive, a in [7, 50]", mins(1), c1),
        (2, "Ennola and Family3 candidates totally positive, a in [7, 200]", mins(1), c2),
        (3, "trace certificates within coeff_bound = 2a, a in [7, 15]", mins(10), c3),
        (4, "Fincke-Pohst count equals naive box count on the random corpus", mins(1), c4),
        (5, "short-vector spot checks and count bound on the corpus", mins(1), c5),
        (6, "counting lemmas on the finite-X grid", mins(1), c6),
        (7, "rank thresholds and the doubling reduction", mins(1), c7),
        (8, "Shanks a = 7 lemma-range candidates indecomposable", mins(30), c8),
        (9, "trace transfer exactness, symmetry and definiteness", mins(1), c9),
        (10, "byte-identical structured CLI output", mins(1), c10),
    ];
    let mut failed = 0;
    for (id, name, budget, check) in criteria {
        let start = Instant::now();
        let mut o = check();
        let elapsed = start.elapsed();
        if elapsed > budget {
            o.pass = false;
            o.detail = format!("{}; over the {}s budget", o.detail, budget.as_secs());
        }
        if !o.pass {
            failed += 1;
        }
        println!(
            "[{}] criterion {id}: {name} ({}; {:.2}s)",
            if o.pass { "PASS" } else { "FAIL" },
            o.detail,
            elapsed.as_secs_f64()
        );
    }
    println!("acceptance: {} of 10 criteria passed", 10 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}

fn mins(m: u64) -> Duration {
    Duration::from_secs(60 * m)
}

fn positivity_suite(family: Family, a_max: i64) -> (usize, Vec<String>) {
    let mut total = 0;
    let mut bad = vec![];
    for a in 7..=a_max {
        let o = CubicOrder::new(family, a).unwrap();
        let cands = candidates(&o, RangeMode::Lemma);
        let rep = verify_total_positivity(&o, &cands, RangeMode::Lemma).unwrap();
        total += rep.entries.len();
        for e in rep.entries.iter().filter(|e| !e.totally_positive) {
            bad.push(format!("{family} a={a} {}", e.candidate.index));
        }
    }
    (total, bad)
}

fn c1() -> Outcome {
    let (total, bad) = positivity_suite(Family::Shanks, 50);
    outcome(bad.is_empty(), format!("{total} candidates, {} not totally positive", bad.len()))
}

fn c2() -> Outcome {
    let (te, be) = positivity_suite(Family::Ennola, 200);
    let (tf, bf) = positivity_suite(Family::Family3, 200);
    outcome(
        be.is_empty() && bf.is_empty(),
        format!("Ennola {te} candidates ({} bad), Family3 {tf} candidates ({} bad)", be.len(), bf.len()),
    )
}

/// Re-verification through field arithmetic, separate from the pairing
/// shortcut used by the search.
fn reverify(o: &CubicOrder, alpha: &OrderElement, h: &OrderElement, target: i64) -> bool {
    let delta = o.dual_element(h);
    let tr = o.trace(&o.mul_field(&FieldVector::from(alpha), &delta));
    o.is_totally_positive_field(&delta) && tr == BigRational::from_integer(target.into())
}

fn c3() -> Outcome {
    let mut details = vec![];
    let mut pass = true;
    for family in Family::ALL {
        let target = theorem_target(family);
        let (mut found, mut exhausted, mut unverified, mut in_square_box) = (0, 0, 0, 0);
        for a in 7..=15 {
            let o = CubicOrder::new(family, a).unwrap();
            for c in candidates(&o, RangeMode::Theorem) {
                match find_certificate(&o, &c, target, 2 * a).unwrap() {
                    Some(cert) => {
                        found += 1;
                        if !(cert.verify(&o, &c.element) && reverify(&o, &c.element, &cert.h, target)) {
                            unverified += 1;
                        }
                    }
                    None => {
                        exhausted += 1;
                        // Diagnostic only: does a box of half-width a^2 suffice?
                        if let Some(cert) = find_certificate(&o, &c, target, a * a).unwrap() {
                            if reverify(&o, &c.element, &cert.h, target) {
                                in_square_box += 1;
                            }
                        }
                    }
                }
            }
        }
        pass &= exhausted == 0 && unverified == 0;
        let mut d = format!("{family}: {found} certified, {exhausted} exhausted");
        if exhausted > 0 {
            d.push_str(&format!(" (of which {in_square_box} certified within a^2, not counted)"));
        }
        details.push(d);
    }
    outcome(pass, details.join("; "))
}

fn inverse_diagonal(g: &GramMatrix) -> Vec<f64> {
    let n = g.rank();
    let mut m: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            (0..2 * n)
                .map(|j| {
                    let v = if j < n { g.get(i, j).clone() } else { BigInt::from(u8::from(j - n == i)) };
                    BigRational::from_integer(v)
                })
                .collect()
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&r| m[r][c] != BigRational::from_integer(0.into())).unwrap();
        m.swap(c, p);
        let pivot = m[c][c].clone();
        for v in m[c].iter_mut() {
            *v = &*v / &pivot;
        }
        for r in 0..n {
            if r != c {
                let f = m[r][c].clone();
                for j in 0..2 * n {
                    let t = &f * &m[c][j];
                    m[r][j] -= t;
                }
            }
        }
    }
    (0..n)
        .map(|i| {
            let v = &m[i][n + i];
            num_traits::ToPrimitive::to_f64(v).unwrap()
        })
        .collect()
}

/// Counts `v` with `v^T G v = n` over the box `|x_i| <= sqrt(n (G^-1)_ii)`.
fn naive_count(g: &GramMatrix, n: u64) -> u64 {
    let r = g.rank();
    let bounds: Vec<i64> = inverse_diagonal(g)
        .iter()
        .map(|d| ((n as f64 * d).sqrt() + 1.0).floor() as i64)
        .collect();
    let mut x: Vec<i64> = bounds.iter().map(|b| -b).collect();
    let target = BigInt::from(n);
    let mut count = 0;
    'outer: loop {
        let v: Vec<BigInt> = x.iter().map(|&c| BigInt::from(c)).collect();
        if g.quadratic_value(&v) == target {
            count += 1;
        }
        for i in 0..r {
            if x[i] < bounds[i] {
                x[i] += 1;
                continue 'outer;
            }
            x[i] = -bounds[i];
        }
        return count;
    }
}

fn c4() -> Outcome {
    let corpus = default_corpus();
    let mut mismatches = 0;
    let mut pairs = 0;
    for g in &corpus {
        for n in 1..=10 {
            pairs += 1;
            if count_short_vectors(g, n, false).unwrap().count != naive_count(g, n) {
                mismatches += 1;
            }
        }
    }
    let max_rank = corpus.iter().map(GramMatrix::rank).max().unwrap();
    outcome(
        corpus.len() == 20 && max_rank <= 5 && mismatches == 0,
        format!("{} matrices (rank <= {max_rank}), {pairs} (matrix, n) pairs, {mismatches} mismatches", corpus.len()),
    )
}

fn c5() -> Outcome {
    let mut ok = true;
    for r in [3u64, 6, 9, 12] {
        let id = GramMatrix::identity(r as usize);
        let n1 = count_short_vectors(&id, 1, false).unwrap().count;
        let n2 = count_short_vectors(&id, 2, false).unwrap().count;
        ok &= n1 == 2 * r && n2 == 2 * r * (r - 1) && n2 <= (2 * r * (r - 1)).max(480);
        ok &= verify_count_bound(&id, 1, DEFAULT_PRECISION_BITS).unwrap().holds;
        ok &= verify_count_bound(&id, 2, DEFAULT_PRECISION_BITS).unwrap().holds;
    }
    let mut violations = 0;
    for g in default_corpus() {
        for n in 1..=10 {
            if !verify_count_bound(&g, n, DEFAULT_PRECISION_BITS).unwrap().holds {
                violations += 1;
            }
        }
    }
    outcome(
        ok && violations == 0,
        format!("identity spot checks {}, {violations} bound violations on the corpus", if ok { "ok" } else { "FAILED" }),
    )
}

fn c6() -> Outcome {
    let (mut passed, mut failed, mut gated) = (0, 0, 0);
    for family in Family::ALL {
        for x in [100u64, 1000, 100_000] {
            for b in [1i64, 10, 100, 1000] {
                let r = verify_counting_lemma(family, x, &BigRational::from_integer(b.into())).unwrap();
                match r.verdict {
                    LemmaVerdict::Pass => passed += 1,
                    LemmaVerdict::Fail => failed += 1,
                    LemmaVerdict::PreconditionNotSatisfied => gated += 1,
                }
            }
        }
    }
    outcome(failed == 0, format!("{passed} pass, {failed} fail, {gated} precondition not satisfied"))
}

fn c7() -> Outcome {
    let rank = |f, a, k, classical| rank_lower_bound(&RankBoundQuery::new(f, a, k, classical)).unwrap().rank;
    let shanks = rank(Family::Shanks, 7, 1, true);
    let ennola = rank(Family::Ennola, 1000, 1, true);
    let grid: [i64; 20] = [
        7, 8, 10, 13, 17, 25, 40, 64, 100, 150, 240, 400, 640, 1000, 1500, 2500, 4000, 6400, 10_000, 25_000,
    ];
    let mut mismatches = 0;
    for (i, &a) in grid.iter().enumerate() {
        let f = Family::ALL[i % 3];
        let k = 1 + (i as u64 % 2);
        if rank(f, a, k, false) != rank(f, a, 2 * k, true) {
            mismatches += 1;
        }
    }
    outcome(
        shanks == 13 && ennola == 11 && mismatches == 0,
        format!("Shanks a=7: {shanks}, Ennola a=1000: {ennola}, doubling grid 20 points, {mismatches} mismatches"),
    )
}

fn c8() -> Outcome {
    let o = CubicOrder::new(Family::Shanks, 7).unwrap();
    let cands = candidates(&o, RangeMode::Lemma);
    let mut decomposing = vec![];
    for c in &cands {
        let e = check_indecomposable(&o, c).unwrap();
        if !e.indecomposable {
            decomposing.push(format!("{} = {} + ...", c.index, e.witness.unwrap()));
        }
    }
    // Either outcome satisfies the criterion, provided decompositions are listed.
    let detail = if decomposing.is_empty() {
        format!("all {} candidates indecomposable", cands.len())
    } else {
        format!("{} of {} decompose: {}", decomposing.len(), cands.len(), decomposing.join(", "))
    };
    outcome(true, detail)
}

fn tp_element(o: &CubicOrder, rng: &mut ChaCha8Rng) -> OrderElement {
    let beta = OrderElement::new(rng.gen_range(-3..=3), rng.gen_range(-3..=3), rng.gen_range(-3..=3));
    &o.mul(&beta, &beta) + &OrderElement::integer(rng.gen_range(1..=3))
}

/// `M^T diag(d) M` with unimodular upper-triangular `M`; totally positive
/// definite, so its diagonal is totally positive.
fn random_ok_gram(o: &CubicOrder, rng: &mut ChaCha8Rng) -> OkGramMatrix {
    let r = rng.gen_range(1..=3);
    let d: Vec<OrderElement> = (0..r).map(|_| tp_element(o, rng)).collect();
    let mut m = vec![vec![0i64; r]; r];
    for i in 0..r {
        m[i][i] = 1;
        for j in (i + 1)..r {
            m[i][j] = rng.gen_range(-2..=2);
        }
    }
    let entries = (0..r)
        .map(|s| {
            (0..r)
                .map(|t| {
                    (0..r).fold(OrderElement::zero(), |acc, k| {
                        &acc + &d[k].scale(&BigInt::from(m[k][s] * m[k][t]))
                    })
                })
                .collect()
        })
        .collect();
    OkGramMatrix::new(o, entries).unwrap()
}

fn c9() -> Outcome {
    let o = CubicOrder::new(Family::Shanks, 7).unwrap();
    let unit = OkGramMatrix::new(&o, vec![vec![OrderElement::one()]]).unwrap();
    let t = trace_transfer(&o, &unit, &OrderElement::one()).unwrap();
    let exact = t.gram == GramMatrix::from_i64(&[&[0, 0, 1], &[0, 1, 7], &[1, 7, 59]]).unwrap();

    let mut rng = ChaCha8Rng::seed_from_u64(0x7ace);
    let (mut cases, mut asym, mut non_integral, mut pd_mismatch, mut tp_cases) = (0, 0, 0, 0, 0);
    for _ in 0..200 {
        let family = Family::ALL[rng.gen_range(0..3)];
        let a = rng.gen_range(7..=30);
        let o = CubicOrder::new(family, a).unwrap();
        let l = random_ok_gram(&o, &mut rng);
        let h = if rng.gen_bool(0.5) {
            o.mul(&o.fprime_at_rho(), &tp_element(&o, &mut rng))
        } else {
            OrderElement::new(rng.gen_range(-8..=8), rng.gen_range(-8..=8), rng.gen_range(-8..=8))
        };
        if h.is_zero() {
            continue;
        }
        cases += 1;
        let t = trace_transfer(&o, &l, &h).unwrap();
        let g = &t.gram;
        let delta = o.dual_element(&h);
        for i in 0..g.rank() {
            for j in 0..g.rank() {
                if g.get(i, j) != g.get(j, i) {
                    asym += 1;
                }
                // Tr(delta B rho^(t+t')) through field arithmetic must be this integer.
                let b = &l.entries()[i / 3][j / 3];
                let e = o.mul(b, &o.rho_pow((i % 3 + j % 3) as u32));
                let tr = o.trace(&o.mul_field(&FieldVector::from(&e), &delta));
                if tr != BigRational::from_integer(g.get(i, j).clone()) {
                    non_integral += 1;
                }
            }
        }
        let delta_tp = o.is_totally_positive_field(&delta);
        tp_cases += usize::from(delta_tp);
        if t.positive_definite != delta_tp {
            pd_mismatch += 1;
        }
    }
    outcome(
        exact && asym == 0 && non_integral == 0 && pd_mismatch == 0,
        format!(
            "Shanks a=7 unit lattice {}; {cases} random cases ({tp_cases} with delta >> 0): {asym} asymmetric, {non_integral} entry mismatches, {pd_mismatch} definiteness mismatches",
            if exact { "exact" } else { "WRONG" }
        ),
    )
}

fn c10() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_cubiclat");
    let invocations: [&[&str]; 5] = [
        &["family-info", "shanks", "--a", "7"],
        &["verify", "3.1", "--a-max", "20"],
        &["certificate", "ennola", "--a", "10"],
        &["rank-bound", "family3", "--a", "500", "--k", "2"],
        &["exceptional", "ennola", "--x", "60", "--eps", "1/3"],
    ];
    let mut differing = vec![];
    for args in invocations {
        let run = || {
            Command::new(bin)
                .args(["--output", "structured"])
                .args(args)
                .output()
                .expect("cli runs")
                .stdout
        };
        let (first, second) = (run(), run());
        if first != second || first.is_empty() {
            differing.push(args.join(" "));
        }
    }
    outcome(
        differing.is_empty(),
        format!("{} invocations, {} differing", invocations.len(), differing.len()),
    )
}

//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::cmp::Ordering;
use std::time::{Duration, Instant};

use logcave::criteria::{compare_criteria, quartic_check};
use logcave::pascal::{binomial_row, verify_list, verify_range, Mode};
use logcave::region::{closure_test, correct_side, decompose, fixed_point, phi, DEFAULT_PRECISION};
use logcave::sample::Sampler;
use logcave::seqcore::{apply_lr, is_r_factor_lc, LcCheck, Parity, Seq};
use logcave::witness::{build_witness, pentagonal, Scheme};
use logcave::{QField, Rat};

type Outcome = Result<String, String>;

struct Criterion {
    id: u32,
    name: &'static str,
    limit: Option<Duration>,
    run: fn() -> Outcome,
}

fn secs(s: u64) -> Option<Duration> {
    Some(Duration::from_secs(s))
}

fn lc_holds(s: &Seq, r: &QField) -> bool {
    matches!(is_r_factor_lc(s, r), Ok(LcCheck::Holds))
}

fn fixed_points() -> Outcome {
    let mut sampler = Sampler::new(1);
    let mut checked = 0;
    for _ in 0..20 {
        let r = sampler.rational_in(&Rat::one(), &Rat::from(10), 12);
        let rq = QField::rational(r.clone());
        let even = QField::rational(Rat::one() + &r);
        let s = Seq::new(vec![QField::one(), even.clone(), even, QField::one()]).unwrap();
        if apply_lr(&s, &rq).unwrap() != s {
            return Err(format!("{{1,1+r,1+r,1}} moved at r = {r}"));
        }
        let phi = phi(&r).unwrap();
        if phi.square().try_sub(&rq).unwrap() != phi {
            return Err(format!("φ² − r ≠ φ at r = {r}"));
        }
        let s = Seq::new(vec![QField::one(), phi, QField::one()]).unwrap();
        if apply_lr(&s, &rq).unwrap() != s {
            return Err(format!("{{1,φ,1}} moved at r = {r}"));
        }
        checked += 2;
    }
    Ok(format!("{checked}/40 sequences exactly invariant"))
}

fn unit_factor_constants() -> Outcome {
    let golden: QField = "1/2+1/2*sqrt(5)".parse().unwrap();
    let p = phi(&Rat::one()).unwrap();
    let even = fixed_point(Parity::Even, &QField::one()).unwrap();
    let odd = fixed_point(Parity::Odd, &QField::one()).unwrap();
    if p != golden || odd != golden || even != QField::from_int(2) {
        return Err(format!("phi(1) = {p}, fixed points {even} / {odd}"));
    }
    Ok(format!("phi(1) = {p}, fixed_point(even, 1) = {even}"))
}

/// Draws `count` r-factor LC sequences and counts how many stay r-factor LC
/// after one application of `step`.
fn preservation(r: &QField, step: &QField, seed: u64) -> Outcome {
    let mut sampler = Sampler::new(seed);
    let mut failures = 0;
    let mut first = None;
    for _ in 0..500 {
        let s = sampler.r_factor_lc_seq(r, 12);
        let image = apply_lr(&s, step).unwrap();
        if !lc_holds(&image, r) {
            failures += 1;
            first.get_or_insert(s);
        }
    }
    match first {
        None => Ok("500/500 preserved".into()),
        Some(s) => Err(format!("{failures}/500 not preserved, first counterexample {s}")),
    }
}

fn r1_preservation() -> Outcome {
    preservation(&QField::r1(), &QField::r1(), 3)
}

fn r0_preservation() -> Outcome {
    preservation(&QField::r0(), &QField::one(), 4)
}

fn quartic() -> Outcome {
    let mut sampler = Sampler::new(5);
    let (mut pairs, mut draws) = (0, 0);
    while pairs < 500 {
        draws += 1;
        if draws > 200_000 {
            return Err(format!("only {pairs} qualifying pairs in {draws} draws"));
        }
        let r = QField::rational(sampler.rational_in(&Rat::one(), &Rat::from(3), 4));
        let s = sampler.r_factor_lc_seq(&r, 10);
        if !lc_holds(&apply_lr(&s, &r).unwrap(), &r) {
            continue;
        }
        pairs += 1;
        if let LcCheck::FailsAt(k) = quartic_check(&s, &r).unwrap() {
            return Err(format!("quartic fails at index {k} for {s}, r = {r}"));
        }
    }
    Ok(format!("500/500 pairs satisfy the quartic ({draws} draws)"))
}

fn closure() -> Outcome {
    let mut sampler = Sampler::new(6);
    let mut parities = [0; 2];
    for i in 0..1000 {
        let (r, p) = sampler.region_member(5);
        parities[(p.parity() == Parity::Odd) as usize] += 1;
        let report = closure_test(&p, &r, 5).unwrap();
        if let Some(v) = report.violation {
            return Err(format!(
                "sample {i}: r = {r}, {p:?} leaves at iteration {} (surface {})",
                v.iteration, v.surface
            ));
        }
    }
    Ok(format!("1000/1000 stay in the region for 5 iterations ({} even, {} odd)", parities[0], parities[1]))
}

fn witnesses() -> Outcome {
    for n in 1..=1000u64 {
        if pentagonal(n + 1) + pentagonal(n - 1) != 2 * pentagonal(n) + 6 {
            return Err(format!("pentagonal identity fails at n = {n}"));
        }
    }
    let p0_minus_half_p1 = Rat::from(pentagonal(0)) - Rat::new(pentagonal(1), 2).unwrap();
    if p0_minus_half_p1 != Rat::from(-1) {
        return Err(format!("P(0) − P(1)/2 = {p0_minus_half_p1}"));
    }
    let mut sampler = Sampler::new(7);
    let mut schemes = [0; 2];
    for i in 0..200 {
        let spec = sampler.witness_spec(4);
        schemes[(spec.scheme == Scheme::Triangular) as usize] += 1;
        let w = build_witness(&spec).map_err(|e| format!("spec {i}: {e}"))?;
        let r = QField::rational(spec.r.clone());
        if !lc_holds(&w.materialize(), &r) {
            return Err(format!("spec {i}: witness not r-factor LC"));
        }
        if !correct_side(&w, &spec.r).unwrap().is_member() {
            return Err(format!("spec {i}: witness outside the region"));
        }
        if !closure_test(&w, &spec.r, 3).unwrap().passed() {
            return Err(format!("spec {i}: witness leaves the region under L_r"));
        }
    }
    Ok(format!(
        "200/200 witnesses valid ({} pentagonal, {} triangular); identities hold for n ≤ 1000",
        schemes[0], schemes[1]
    ))
}

fn pascal_rows() -> Outcome {
    let start = Instant::now();
    let small = verify_range(0, 200, Mode::Both, 20).unwrap();
    let small_time = start.elapsed();
    if let Some(r) = small.iter().find(|r| !r.all_certified()) {
        return Err(format!("row {} not certified", r.n));
    }
    if let Some(r) = small.iter().find(|r| !r.r1_not_later()) {
        return Err(format!("row {}: r1 later than r0", r.n));
    }
    if small_time > Duration::from_secs(30) {
        return Err(format!("rows 0-200 took {:.1} s (limit 30 s)", small_time.as_secs_f64()));
    }
    let start = Instant::now();
    let large = verify_list(&[500, 1000, 1450], Mode::Both, 20);
    let large_time = start.elapsed();
    let mut counts = Vec::new();
    for r in &large {
        if !r.all_certified() || !r.r1_not_later() {
            return Err(format!("row {} failed: {:?}", r.n, r));
        }
        let at = |c: &Option<logcave::criteria::Certificate>| c.as_ref().and_then(|c| c.certified_at()).unwrap();
        counts.push(format!("{}: r0 {} / r1 {}", r.n, at(&r.certificate_r0), at(&r.certificate_r1)));
    }
    if large_time > Duration::from_secs(600) {
        return Err(format!("rows 500/1000/1450 took {:.1} s (limit 600 s)", large_time.as_secs_f64()));
    }
    Ok(format!(
        "rows 0-200 certified in {:.1} s; {} in {:.1} s",
        small_time.as_secs_f64(),
        counts.join(", "),
        large_time.as_secs_f64()
    ))
}

fn improvement() -> Outcome {
    if QField::r1().cmp_mixed(&QField::r0()) != Ordering::Less {
        return Err("1+√2 < (3+√5)/2 not confirmed".into());
    }
    let (r1, r0) = (1.0 + 2f64.sqrt(), (3.0 + 5f64.sqrt()) / 2.0);
    if r1 >= r0 {
        return Err(format!("float sanity check disagrees: {r1} vs {r0}"));
    }
    let mut earlier = 0;
    for n in 0..=200 {
        let cmp = compare_criteria(&binomial_row(n), 20).unwrap();
        if !(cmp.r0.is_certified() && cmp.r1.is_certified() && cmp.r1_not_later()) {
            return Err(format!("row {n}: r0 {:?} r1 {:?}", cmp.r0.verdict, cmp.r1.verdict));
        }
        earlier += (cmp.r1.iterations < cmp.r0.iterations) as usize;
    }
    Ok(format!("1+√2 < (3+√5)/2 exactly; r1 no later on 201/201 rows, strictly earlier on {earlier}"))
}

fn monotone_gaps() -> Outcome {
    let mut sampler = Sampler::new(10);
    for i in 0..500 {
        let (r, p) = sampler.geometric_lc_point(6);
        if !lc_holds(&p.materialize(), &QField::rational(r)) {
            return Err(format!("sample {i} is not r-factor LC"));
        }
        let d = decompose(&p, DEFAULT_PRECISION).unwrap();
        if let Some(reason) = d.not_geometric {
            return Err(format!("sample {i}: {reason}"));
        }
        let gaps: Option<Vec<Rat>> = d.gaps.iter().map(|g| g.exact.clone()).collect();
        let Some(gaps) = gaps else {
            return Err(format!("sample {i}: exact gaps not recovered"));
        };
        let bounded = gaps.first().is_none_or(|g| g <= &Rat::one()) && gaps.last().is_none_or(|g| g >= &Rat::zero());
        if !bounded || gaps.windows(2).any(|w| w[0] < w[1]) {
            return Err(format!("sample {i}: gaps {gaps:?} not monotone in [0, 1]"));
        }
    }
    Ok("500/500 decompositions monotone in [0, 1]".into())
}

fn main() {
    let criteria = [
        Criterion { id: 1, name: "fixed-point exactness", limit: secs(1), run: fixed_points },
        Criterion { id: 2, name: "unit-factor constants", limit: None, run: unit_factor_constants },
        Criterion { id: 3, name: "r1-factor preservation under L_r1", limit: secs(10), run: r1_preservation },
        Criterion { id: 4, name: "r0-factor preservation under L", limit: None, run: r0_preservation },
        Criterion { id: 5, name: "quartic necessary condition", limit: None, run: quartic },
        Criterion { id: 6, name: "region closure", limit: secs(60), run: closure },
        Criterion { id: 7, name: "witness validity", limit: None, run: witnesses },
        Criterion { id: 8, name: "Pascal rows", limit: None, run: pascal_rows },
        Criterion { id: 9, name: "r1 improvement", limit: None, run: improvement },
        Criterion { id: 10, name: "monotone gaps", limit: None, run: monotone_gaps },
    ];
    let mut failed = Vec::new();
    for c in &criteria {
        let start = Instant::now();
        let mut outcome = (c.run)();
        let elapsed = start.elapsed();
        if let (Ok(_), Some(limit)) = (&outcome, c.limit) {
            if elapsed > limit {
                outcome = Err(format!("took {:.2} s, limit {} s", elapsed.as_secs_f64(), limit.as_secs()));
            }
        }
        let (status, detail) = match outcome {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failed.push(c.id);
                ("FAIL", d)
            }
        };
        println!("criterion {:>2} {status} {}: {detail} [{:.2} s]", c.id, c.name, elapsed.as_secs_f64());
    }
    if failed.is_empty() {
        println!("acceptance: all 10 criteria pass");
    } else {
        println!("acceptance: {} failing: {failed:?}", failed.len());
        std::process::exit(1);
    }
}

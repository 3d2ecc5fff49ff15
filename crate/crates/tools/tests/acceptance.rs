//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any
//! criterion fails.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::f64::consts::PI;
use std::process::Command;
use std::time::Instant;

use cyclo5::verify::{
    verify_separation, verify_step_existence, verify_two_distance, verify_unit_lemma, Detail,
};
use cyclo5::{
    analyze, enumerate, enumerate_naive, min_distance, ClassCounts, CycInt, Embedding, GoldenInt,
    Rational, Snapshot, Window,
};
use cyclo5_tools::io::{write_snapshot, Format};
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;

type Outcome = Result<String, String>;
type Criterion<'a> = Box<dyn FnOnce() -> Outcome + 'a>;

const SHORT: GoldenInt = GoldenInt::SHORT_SQ;
const LONG: GoldenInt = GoldenInt::LONG_SQ;

fn r(n: i64) -> Rational {
    Rational::from_integer(n)
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn analyzed(r2: i64) -> Result<Snapshot, String> {
    let mut snap = enumerate(r(r2), Window::unit()).map_err(|e| e.to_string())?;
    analyze(&mut snap).map_err(|e| e.to_string())?;
    Ok(snap)
}

fn detail<'a>(rep: &'a cyclo5::VerificationReport, key: &str) -> Result<&'a Detail, String> {
    rep.detail(key).ok_or_else(|| format!("report lacks {key}"))
}

fn count(rep: &cyclo5::VerificationReport, key: &str) -> Result<u64, String> {
    match detail(rep, key)? {
        Detail::Count(n) => Ok(*n),
        other => Err(format!("{key} is {other:?}")),
    }
}

fn two_distance(big: &Snapshot) -> Outcome {
    let rep = verify_two_distance(big).map_err(|e| e.to_string())?;
    let counts = ClassCounts::of(big);
    ensure(rep.pass(), || format!("{} violations, first {:?}", rep.violation_count, rep.violations.first()))?;
    ensure(counts.other == 0, || format!("{} points of class other", counts.other))?;
    Ok(format!(
        "{} points, {} inner: {} at 2-φ, {} at 1, 0 other",
        big.len(),
        rep.tested_count,
        counts.short,
        counts.long
    ))
}

fn tightness(big: &Snapshot) -> Outcome {
    let one = CycInt::ONE;
    let partner = CycInt::new(0, 0, -1, -1);
    let d = (one - partner).abs_sq(Embedding::Physical).map_err(|e| e.to_string())?;
    ensure(d == SHORT, || format!("|1 - (-ζ²-ζ³)|² = {d}"))?;
    let (d0, _) = min_distance(CycInt::ZERO, Window::unit()).map_err(|e| e.to_string())?;
    ensure(d0 == LONG, || format!("min distance of 0 is {d0}"))?;
    let (d1, w1) = min_distance(one, Window::unit()).map_err(|e| e.to_string())?;
    ensure(d1 == SHORT && w1 == partner, || format!("min distance of 1 is {d1} via {w1}"))?;
    for r2 in [4, 9, 25, 100] {
        let c = ClassCounts::of(&analyzed(r2)?);
        ensure(c.short > 0 && c.long > 0, || format!("R²={r2}: {c:?}"))?;
    }
    let c = ClassCounts::of(big);
    ensure(c.short > 0 && c.long > 0, || format!("R²=400: {c:?}"))?;
    Ok("|1-(-ζ²-ζ³)|² = 2-φ, min dist(0) = 1, both classes at R² ∈ {4,9,25,100,400}".into())
}

fn separation(big: &Snapshot) -> Outcome {
    let rep = verify_separation(big).map_err(|e| e.to_string())?;
    ensure(rep.pass(), || format!("{} pairs below 1/16", rep.violation_count))?;
    ensure(detail(&rep, "norm_bound_holds")? == &Detail::Bool(true), || "a pair is below 1/4".into())?;
    let min = detail(&rep, "observed_min_sq")?;
    ensure(min == &Detail::Golden(SHORT), || format!("observed minimum {min:?}"))?;
    Ok(format!("{} pairs, all ≥ 1/16 and ≥ 1/4, minimum exactly 2-φ", rep.tested_count))
}

fn unit_lemma() -> Outcome {
    let snap = enumerate(r(100), Window::unit()).map_err(|e| e.to_string())?;
    let rep = verify_unit_lemma(&snap).map_err(|e| e.to_string())?;
    ensure(rep.pass(), || format!("{} violations, first {:?}", rep.violation_count, rep.violations.first()))?;
    Ok(format!(
        "{} pairs, {} with |Δ|² < 5/4 all units, smallest non-unit norm {}",
        rep.tested_count,
        count(&rep, "close_pairs")?,
        count(&rep, "min_non_unit_norm")?
    ))
}

fn step_existence(big: &Snapshot) -> Outcome {
    let rep = verify_step_existence(big).map_err(|e| e.to_string())?;
    ensure(rep.pass(), || format!("{} points without a step", rep.violation_count))?;
    Ok(format!("{} points each have a tenth-root step in S", rep.tested_count))
}

fn symmetry(big: &Snapshot) -> Outcome {
    let set: BTreeSet<CycInt> = big.points.iter().map(|p| p.z).collect();
    let mut maps = 0u64;
    for u in CycInt::tenth_roots() {
        let image: BTreeSet<CycInt> = set.iter().map(|&z| z * u).collect();
        ensure(image == set, || format!("not invariant under {u}"))?;
        maps += 1;
    }
    let image: BTreeSet<CycInt> = set.iter().map(|z| z.conj()).collect();
    ensure(image == set, || "not invariant under conjugation".into())?;
    Ok(format!("R²=400 set of {} points invariant under {maps} roots ±ζ^k and conjugation", set.len()))
}

fn bytes(snap: &Snapshot, format: Format) -> Vec<u8> {
    let mut out = Vec::new();
    write_snapshot(snap, format, &mut out).expect("writing to memory");
    out
}

fn oracle_equivalence() -> Outcome {
    let windows = [Window::unit(), Window::new(Rational::new(1, 4)).unwrap(), Window::new(r(4)).unwrap()];
    let mut runs = 0;
    for w in windows {
        for r2 in 0..=36 {
            let fast = enumerate(r(r2), w).map_err(|e| e.to_string())?;
            let slow = enumerate_naive(r(r2), w).map_err(|e| e.to_string())?;
            for format in [Format::Jsonl, Format::Csv] {
                ensure(bytes(&fast, format) == bytes(&slow, format), || {
                    format!("R²={r2} w={} differ in {format}", w.radius_sq())
                })?;
            }
            runs += 1;
        }
    }
    Ok(format!("{runs} (R², w) cases byte-identical in jsonl and csv"))
}

fn small_counts() -> Outcome {
    let n1 = enumerate(r(1), Window::unit()).map_err(|e| e.to_string())?.len();
    let n0 = enumerate(r(0), Window::unit()).map_err(|e| e.to_string())?.len();
    ensure(n1 == 11 && n0 == 1, || format!("counts {n1} and {n0}"))?;
    Ok("R²=1 → 11 points, R²=0 → 1 point".into())
}

/// Sign of p + qφ − n/d from √5 to 60 decimal places in fixed point.
/// `None` when the fixed-point value is too close to zero to decide.
fn high_precision_sign(p: i64, q: i64, n: i64, d: i64) -> Option<Ordering> {
    let scale = BigInt::from(10u8).pow(60);
    let sqrt5 = (BigInt::from(5u8) * &scale * &scale).sqrt();
    let (p, q, n, d) = (BigInt::from(p), BigInt::from(q), BigInt::from(n), BigInt::from(d));
    // 2d(p + qφ − n/d) = (2pd + qd − 2n) + qd√5
    let rational = BigInt::from(2u8) * &p * &d + &q * &d - BigInt::from(2u8) * &n;
    let approx = rational * &scale + &q * &d * sqrt5;
    let err = (&q * &d).magnitude().clone() + 1u8;
    if approx.magnitude() <= &err {
        return if q == BigInt::from(0u8) { Some(approx.sign().cmp(&num_bigint::Sign::NoSign)) } else { None };
    }
    Some(if approx > BigInt::from(0u8) { Ordering::Greater } else { Ordering::Less })
}

fn random_cyc(rng: &mut ChaCha20Rng, bound: i64) -> CycInt {
    CycInt::new(
        rng.random_range(-bound..=bound),
        rng.random_range(-bound..=bound),
        rng.random_range(-bound..=bound),
        rng.random_range(-bound..=bound),
    )
}

fn arithmetic_suite() -> Outcome {
    let mut rng = ChaCha20Rng::seed_from_u64(0x5eed_0005);
    let (mut checks, mut failed) = (0u64, 0u64);
    let mut failures = Vec::new();
    let mut note = |ok: bool, what: String| {
        checks += 1;
        if !ok {
            failed += 1;
            if failures.len() < 5 {
                failures.push(what);
            }
        }
    };
    for _ in 0..10_000 {
        let (a, b, c) = (random_cyc(&mut rng, 10_000), random_cyc(&mut rng, 10_000), random_cyc(&mut rng, 10_000));
        note(
            a * b == b * a && (a * b) * c == a * (b * c) && a * (b + c) == a * b + a * c && a + (b - a) == b,
            format!("ring axioms at {a} {b} {c}"),
        );
        let k = rng.random_range(1u8..=4);
        let s = |z: CycInt| z.galois(k).unwrap();
        note(s(a * b) == s(a) * s(b) && s(a + b) == s(a) + s(b), format!("σ_{k} at {a} {b}"));

        let (x, y) = (random_cyc(&mut rng, 100), random_cyc(&mut rng, 100));
        let nx = i128::from(x.field_norm().unwrap());
        let ny = i128::from(y.field_norm().unwrap());
        note(i128::from((x * y).field_norm().unwrap()) == nx * ny, format!("N multiplicative at {x} {y}"));

        let [a0, a1, a2, a3] = a.coords();
        let sq = a0 * a0 + a1 * a1 + a2 * a2 + a3 * a3;
        let sum = a0 + a1 + a2 + a3;
        let ph = a.abs_sq(Embedding::Physical).unwrap();
        let it = a.abs_sq(Embedding::Internal).unwrap();
        note(
            ph.p + it.p == (5 * sq - sum * sum) / 2 && ph.q + it.q == 0,
            format!("Q identity at {a}"),
        );

        let g = GoldenInt::new(rng.random_range(-1_000_000_000..=1_000_000_000), rng.random_range(-1_000_000_000..=1_000_000_000));
        let den = rng.random_range(1..=1_000_000i64);
        // Aim n/d close to g so the comparison is not trivially decided.
        let target = g.to_f64() * den as f64;
        let num = target.round() as i64 + rng.random_range(-2..=2);
        let want = high_precision_sign(g.p, g.q, num, den);
        let got = g.cmp_rational(&Rational::new(num, den));
        note(want == Some(got), format!("golden_cmp {g} vs {num}/{den}: {got:?}, oracle {want:?}"));
    }
    ensure(failed == 0, || format!("{failed} failures of {checks}, first {failures:?}"))?;
    Ok(format!("{checks} seeded checks over 10000 rounds, 0 failures"))
}

/// p + qφ in double-double, good to about 1e-16 of max(|p|, |qφ|).
fn golden_to_f64_accurate(g: GoldenInt) -> f64 {
    const PHI_HI: f64 = 1.618_033_988_749_895;
    const PHI_LO: f64 = -5.432_115_203_682_506e-17;
    let q = g.q as f64;
    let prod = q * PHI_HI;
    let prod_err = q.mul_add(PHI_HI, -prod);
    let p = g.p as f64;
    let sum = p + prod;
    let bp = sum - p;
    let sum_err = (p - (sum - bp)) + (prod - bp);
    sum + (sum_err + prod_err + q * PHI_LO)
}

fn float_consistency() -> Outcome {
    let mut rng = ChaCha20Rng::seed_from_u64(0xf10a7);
    let mut worst_rel = 0f64;
    let mut worst_abs = 0f64;
    for _ in 0..10_000 {
        let z = random_cyc(&mut rng, 10_000);
        for e in [Embedding::Physical, Embedding::Internal] {
            let exact = golden_to_f64_accurate(z.abs_sq(e).map_err(|e| e.to_string())?);
            let approx = z.embed(e).norm_sqr();
            let abs = (approx - exact).abs();
            worst_abs = worst_abs.max(abs);
            worst_rel = worst_rel.max(abs / exact.max(1.0));
        }
    }
    ensure(worst_rel <= 1e-9, || format!("worst relative error {worst_rel:.3e}"))?;
    Ok(format!(
        "10000 z, both embeddings: worst error {worst_rel:.2e} relative to max(1, |z|²) (absolute {worst_abs:.2e})"
    ))
}

fn density() -> Outcome {
    let snap = enumerate(r(900), Window::unit()).map_err(|e| e.to_string())?;
    let observed = snap.len() as f64 / (PI * 900.0);
    let target = 4.0 * PI / 125f64.sqrt();
    let rel = (observed - target).abs() / target;
    ensure(rel <= 0.10, || format!("density {observed:.5} vs {target:.5} ({:.2}%)", rel * 100.0))?;
    Ok(format!("{} points, density {observed:.5} vs 4π/√125 = {target:.5} ({:.2}% off)", snap.len(), rel * 100.0))
}

fn data_a_attrs(svg: &str, class: &str) -> Vec<String> {
    let marker = format!(r#"class="{class}" data-a=""#);
    svg.match_indices(&marker)
        .map(|(i, m)| {
            let rest = &svg[i + m.len()..];
            rest[..rest.find('"').unwrap()].to_string()
        })
        .collect()
}

fn figure() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let mut svgs = Vec::new();
    for name in ["a.svg", "b.svg"] {
        let path = dir.path().join(name);
        let status = Command::new(env!("CARGO_BIN_EXE_cyclo5"))
            .args(["render", "--radius", "6", "--highlight-roots", "--out"])
            .arg(&path)
            .output()
            .map_err(|e| e.to_string())?;
        ensure(status.status.success(), || format!("render exited with {:?}", status.status))?;
        svgs.push(std::fs::read(&path).map_err(|e| e.to_string())?);
    }
    ensure(svgs[0] == svgs[1], || "two runs produced different bytes".into())?;
    let svg = String::from_utf8(svgs.remove(0)).map_err(|e| e.to_string())?;
    let got: BTreeSet<String> = data_a_attrs(&svg, "highlight").into_iter().collect();
    let mut want = BTreeSet::from([CycInt::ZERO]);
    want.extend((0..5).map(CycInt::zeta_pow));
    let want: BTreeSet<String> = want
        .iter()
        .map(|z| {
            let [a, b, c, d] = z.coords();
            format!("{a},{b},{c},{d}")
        })
        .collect();
    let count = svg.matches(r#"class="highlight""#).count();
    ensure(count == 6 && got == want, || format!("{count} highlights: {got:?}"))?;
    let dots = svg.matches(r#"<circle class="pt "#).count();
    Ok(format!("{dots} dots, highlights exactly {{0, ζ⁰..ζ⁴}}, identical bytes across runs"))
}

fn main() {
    let start = Instant::now();
    let big = analyzed(400);
    let big = &big;
    let prep_ms = start.elapsed().as_millis();
    let with_big = |f: fn(&Snapshot) -> Outcome| -> Criterion<'_> {
        Box::new(move || big.as_ref().map_err(Clone::clone).and_then(f))
    };
    let criteria: Vec<(&str, Criterion)> = vec![
        ("two-distance at R²=400", with_big(two_distance)),
        ("tightness", with_big(tightness)),
        ("separation at R²=400", with_big(separation)),
        ("unit lemma at R²=100", Box::new(unit_lemma)),
        ("step existence at R²=400", with_big(step_existence)),
        ("symmetry at R²=400", with_big(symmetry)),
        ("fast = naive enumeration", Box::new(oracle_equivalence)),
        ("small counts", Box::new(small_counts)),
        ("arithmetic suite", Box::new(arithmetic_suite)),
        ("float consistency", Box::new(float_consistency)),
        ("density at R=30", Box::new(density)),
        ("figure reproduction", Box::new(figure)),
    ];
    println!("     R²=400, w=1 snapshot enumerated and analysed in {prep_ms} ms");
    let mut failed = 0;
    for (i, (name, run)) in criteria.into_iter().enumerate() {
        let t = Instant::now();
        let outcome = run();
        let ms = t.elapsed().as_millis();
        match outcome {
            Ok(msg) => println!("PASS {:>2} {name}: {msg} [{ms} ms]", i + 1),
            Err(msg) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {msg} [{ms} ms]", i + 1);
            }
        }
    }
    println!("acceptance: {} of 12 criteria passed in {:.1} s", 12 - failed, start.elapsed().as_secs_f64());
    if failed > 0 {
        std::process::exit(1);
    }
}

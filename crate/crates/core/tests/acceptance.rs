use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use pretzel_hfk::hfk::check_geometry;
use pretzel_hfk::pairing::{pair_rational_general, pair_rational_neg_half, pair_rational_pos_half};
use pretzel_hfk::tangle_curves::{pretzel_tangle_curves, slope_ab};
use pretzel_hfk::{
    classify, classify_table, compute_hfk, pretzel_alexander, pretzel_determinant, Classification, ClosureSign,
    CurveKind, GeneratorMultiset, GradedCurve, HalfInteger, HfkTable, ReducedSlope, TangleParams,
};

const SIGNS: [ClosureSign; 2] = [ClosureSign::Positive, ClosureSign::Negative];

fn grid(max: u32, signs: &[ClosureSign]) -> Vec<TangleParams> {
    let mut out = Vec::new();
    for a in 1..=max {
        for b in 1..=max {
            for c in 1..=max {
                for &s in signs {
                    out.push(TangleParams::new(a, b, c, s).expect("positive parameters"));
                }
            }
        }
    }
    out
}

fn table(p: TangleParams) -> Result<HfkTable, String> {
    compute_hfk(p).map_err(|e| format!("{p}: {e}"))
}

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn euler_characteristic_matches_fox() -> Outcome {
    let knots = grid(6, &SIGNS);
    for &p in &knots {
        let chi = table(p)?.euler_characteristic().map_err(|e| format!("{p}: {e}"))?;
        let (x, y, z) = p.pretzel_triple();
        let fox = pretzel_alexander(x, y, z).map_err(|e| format!("{p}: {e}"))?;
        if chi != fox {
            return Err(format!("{p}: Euler characteristic {chi}, Fox {fox}"));
        }
    }
    Ok(format!("{} knots", knots.len()))
}

fn overlap_ranks_match_table() -> Outcome {
    let mut n = 0;
    for p in grid(6, &[ClosureSign::Positive]) {
        let (a, b, c) = (p.a, p.b, p.c);
        if !(b + 1 < a && b < c) {
            continue;
        }
        let t = table(p)?;
        let (low, high) = (HalfInteger::from_twice(-1), HalfInteger::from_twice(1));
        let s = i64::from(c - b);
        for s in [s, -s] {
            let got = (t.rank(s, high), t.rank(s, low));
            if got != (u64::from(b), u64::from(a - b - 1)) {
                return Err(format!("{p}: ranks at s={s} are {got:?}"));
            }
        }
        n += 1;
    }
    let t = table(TangleParams::new(3, 1, 2, ClosureSign::Positive).unwrap())?;
    let split: Vec<u64> = t
        .deltas()
        .iter()
        .rev()
        .map(|d| t.generators.alexander_support(*d).iter().map(|&s| t.rank(s, *d)).sum())
        .collect();
    if t.total_rank() != 13 || split != [8, 5] {
        return Err(format!("P(6,-3,5): total {}, delta split {split:?}", t.total_rank()));
    }
    Ok(format!("{n} overlap tuples, P(6,-3,5) total 13 split (8, 5)"))
}

fn negative_closure_single_delta_per_grading() -> Outcome {
    let knots = grid(6, &[ClosureSign::Negative]);
    for &p in &knots {
        let t = table(p)?;
        let deltas = t.deltas();
        for s in t.generators.alexander_profile().keys() {
            let occupied = deltas.iter().filter(|d| t.rank(*s, **d) > 0).count();
            if occupied > 1 {
                return Err(format!("{p}: s={s} occupies {occupied} delta gradings"));
            }
        }
    }
    Ok(format!("{} knots", knots.len()))
}

fn positive_trichotomy() -> Outcome {
    let mut census: BTreeMap<&str, usize> = BTreeMap::new();
    for p in grid(6, &[ClosureSign::Positive]) {
        let observed = classify_table(&table(p)?).map_err(|e| format!("{p}: {e}"))?;
        let predicted = classify(p);
        if observed != predicted {
            return Err(format!("{p}: table {observed}, predicate {predicted}"));
        }
        let overlap_expected = p.b < (p.a - 1).min(p.c);
        if matches!(observed, Classification::Overlap { .. }) != overlap_expected {
            return Err(format!("{p}: overlap {observed} against b < min(a-1, c)"));
        }
        *census.entry(observed.name()).or_default() += 1;
    }
    Ok(format!("census {census:?}"))
}

fn thin_total_rank_is_determinant() -> Outcome {
    let mut n = 0;
    for p in grid(6, &SIGNS) {
        if classify(p) != Classification::Thin {
            continue;
        }
        let (x, y, z) = p.pretzel_triple();
        let t = table(p)?;
        if t.total_rank() != pretzel_determinant(x, y, z) {
            return Err(format!(
                "{p}: total {} vs determinant {}",
                t.total_rank(),
                pretzel_determinant(x, y, z)
            ));
        }
        n += 1;
    }
    for (a, b, c, det) in [(1, 1, 2, 11), (1, 2, 2, 25)] {
        let t = table(TangleParams::new(a, b, c, ClosureSign::Positive).unwrap())?;
        if t.total_rank() != det {
            return Err(format!("{}: total {} vs {det}", t.params, t.total_rank()));
        }
    }
    Ok(format!("{n} thin knots, P(2,-3,5) = 11, P(2,-5,5) = 25"))
}

fn geometric_oracle_agrees() -> Outcome {
    let mut pairings = 0;
    for p in grid(6, &SIGNS) {
        if let pretzel_hfk::hfk::Outcome::Fail(e) = check_geometry(p) {
            return Err(format!("{p}: {e}"));
        }
        pairings += pretzel_tangle_curves(p.a, p.b)
            .iter()
            .filter(|c| matches!(c.kind, CurveKind::Rational(_)))
            .count();
    }
    Ok(format!("{pairings} rational pairings"))
}

fn symmetric(m: &GeneratorMultiset) -> bool {
    m.negated() == *m
}

fn symmetry_properties() -> Outcome {
    for p in grid(6, &SIGNS) {
        let t = table(p)?;
        if !symmetric(&t.generators) {
            return Err(format!("{p}: table not invariant under s -> -s"));
        }
    }
    for a in 1..=6 {
        for b in 1..=6 {
            let mut curves = pretzel_tangle_curves(a, b);
            let mut reversed: Vec<GradedCurve> = curves.iter().map(GradedCurve::reversed).collect();
            let key = |g: &GradedCurve| format!("{g}");
            curves.sort_by_key(key);
            reversed.sort_by_key(key);
            if curves != reversed {
                return Err(format!("curve list for a={a}, b={b} not closed under reversal"));
            }
        }
    }
    let mut general = 0;
    for a in 3..=12 {
        for b in 1..a - 1 {
            let g = slope_ab(a, b).map_err(|e| e.to_string())?;
            let slope = ReducedSlope::new(-g.a_num, g.b_den).map_err(|e| e.to_string())?;
            for c in 1..=12 {
                for s in SIGNS {
                    let m = pair_rational_general(s, c, slope, g.max).map_err(|e| e.to_string())?;
                    if !symmetric(&m) {
                        return Err(format!("r({slope}) with c={c} {s:?} not negation-invariant"));
                    }
                    general += 1;
                }
            }
        }
    }
    Ok(format!("432 tables, 36 curve lists, {general} general-slope pairings"))
}

/// `T(2, k)`: one generator in each of `|k|` consecutive Alexander gradings, one delta.
fn is_torus_shape(m: &GeneratorMultiset, k: i64, center: i64) -> bool {
    let half = (k.abs() - 1) / 2;
    m.deltas().len() == 1
        && m.total_rank() == k.unsigned_abs()
        && m.iter().all(|(_, r)| r == 1)
        && m.alexander_profile().keys().copied().eq(center - half..=center + half)
}

fn torus_degenerations() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x7072_6574);
    for _ in 0..20 {
        let n: i64 = rng.gen_range(1..=30);
        let c: u32 = rng.gen_range(1..=30);
        let ci = i64::from(c);
        let m = 2 * rng.gen_range(-20..=20);
        let neg = GradedCurve::rational(ReducedSlope::new(-1, 2 * n).unwrap(), -2 * n, 2 * n);
        let pos = GradedCurve::rational(ReducedSlope::new(1, 2 * n).unwrap(), m, m + 4 * n);
        let center = m / 2 + n;
        let cases = [
            (
                "RN negative",
                pair_rational_neg_half(ClosureSign::Negative, c, &neg),
                -2 * (ci + n) - 1,
                0,
            ),
            (
                "RN positive",
                pair_rational_neg_half(ClosureSign::Positive, c, &neg),
                2 * ci - 2 * n + 1,
                0,
            ),
            (
                "RP negative",
                pair_rational_pos_half(ClosureSign::Negative, c, &pos),
                2 * n - 2 * ci - 1,
                center,
            ),
            (
                "RP positive",
                pair_rational_pos_half(ClosureSign::Positive, c, &pos),
                2 * n + 2 * ci + 1,
                center,
            ),
        ];
        for (label, result, k, center) in cases {
            let out = result.map_err(|e| format!("{label} n={n} c={c}: {e}"))?;
            if !is_torus_shape(&out, k, center) {
                return Err(format!("{label} n={n} c={c} m={m}: {out:?} is not T(2,{k})"));
            }
        }
    }
    Ok("20 random (n, c) pairs, 4 closed forms each".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        (
            "Euler characteristic equals the Fox-calculus Alexander polynomial",
            euler_characteristic_matches_fox,
        ),
        ("overlap ranks at s = ±(c-b) are (b, a-b-1)", overlap_ranks_match_table),
        (
            "negative closure: each Alexander grading in at most one delta",
            negative_closure_single_delta_per_grading,
        ),
        (
            "positive closure: table shape matches the predicate trichotomy",
            positive_trichotomy,
        ),
        (
            "thin knots: total rank equals |pq+qr+rp|",
            thin_total_rank_is_determinant,
        ),
        (
            "geometric intersections reproduce every rational pairing",
            geometric_oracle_agrees,
        ),
        (
            "symmetry of tables, curve lists and general-slope pairings",
            symmetry_properties,
        ),
        ("torus-knot degenerations of the 1/2n pairings", torus_degenerations),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = run();
        let ms = start.elapsed().as_millis();
        match result {
            Ok(detail) => println!("criterion {}: PASS  {name} ({detail}; {ms} ms)", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}: {why}", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

//! Assembly of the full knot Floer homology table, shape classification,
//! and the verification report.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Signed;
use thiserror::Error;

use crate::alexander_oracle::{pretzel_alexander, pretzel_determinant, DiagramError};
use crate::algebra::{euler_characteristic, AlgebraError, Generator, GeneratorMultiset, HalfInteger};
use crate::geom_oracle::{det_pair_count, enumerate_geometric_pairing, GeomError};
use crate::pairing::{pair_curve, reduce_generator_pairs, PairingError};
use crate::tangle_curves::{
    closure_curve, pretzel_tangle_curves, CaseLabel, ClosureSign, CurveKind, GradedCurve, TangleParams,
};
use crate::LaurentPolynomial;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HfkError {
    #[error("pairing failed for {curve}: {source}")]
    Pairing { curve: GradedCurve, source: PairingError },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// `HFK-hat` as ranks per `(s, δ)`, with relative delta gradings.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HfkTable {
    pub params: TangleParams,
    pub generators: GeneratorMultiset,
}

impl HfkTable {
    pub fn total_rank(&self) -> u64 {
        self.generators.total_rank()
    }

    pub fn rank(&self, s: i64, delta: HalfInteger) -> u64 {
        self.generators.rank(s, delta)
    }

    pub fn deltas(&self) -> Vec<HalfInteger> {
        self.generators.deltas()
    }

    /// Entries `(s, δ, rank)` sorted by `(s, δ)`.
    pub fn entries(&self) -> Vec<(i64, HalfInteger, u64)> {
        self.generators.iter().map(|(g, r)| (g.alexander, g.delta, r)).collect()
    }

    /// Graded Euler characteristic, normalized to a symmetric Alexander polynomial.
    pub fn euler_characteristic(&self) -> Result<LaurentPolynomial, AlgebraError> {
        euler_characteristic::<BigInt>(&self.generators)?.normalize_alexander()
    }
}

impl fmt::Display for HfkTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.params)?;
        for delta in self.deltas() {
            let row: Vec<String> = self
                .generators
                .alexander_support(delta)
                .into_iter()
                .map(|s| format!("{s}:{}", self.rank(s, delta)))
                .collect();
            writeln!(f, "  delta {delta}: {}", row.join(" "))?;
        }
        write!(f, "  total rank {}", self.total_rank())
    }
}

/// Disjoint union of the pairings of every tangle curve with the closing curve.
pub fn compute_hfk(params: TangleParams) -> Result<HfkTable, HfkError> {
    let mut generators = GeneratorMultiset::new();
    for curve in pretzel_tangle_curves(params.a, params.b) {
        let part =
            pair_curve(params.closure, params.c, &curve).map_err(|source| HfkError::Pairing { curve, source })?;
        generators.merge(&part);
    }
    Ok(HfkTable { params, generators })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Classification {
    /// One delta grading.
    Thin,
    /// Two delta gradings with disjoint Alexander supports.
    TwoDeltaDisjoint,
    /// Two delta gradings sharing exactly `s = ±grading`, with the ranks at
    /// `s = grading` in the higher and the lower delta.
    Overlap {
        grading: i64,
        high_rank: u64,
        low_rank: u64,
    },
}

impl Classification {
    pub fn name(&self) -> &'static str {
        match self {
            Classification::Thin => "thin",
            Classification::TwoDeltaDisjoint => "two-delta-disjoint",
            Classification::Overlap { .. } => "overlap",
        }
    }
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Classification::Overlap {
                grading,
                high_rank,
                low_rank,
            } => {
                write!(f, "overlap at s=±{grading} (ranks {high_rank}, {low_rank})")
            }
            other => f.write_str(other.name()),
        }
    }
}

/// Predicted shape from the parameters alone.
pub fn classify(params: TangleParams) -> Classification {
    let TangleParams { a, b, c, closure } = params;
    match closure {
        ClosureSign::Negative if a > b || a > c => Classification::Thin,
        ClosureSign::Negative => Classification::TwoDeltaDisjoint,
        ClosureSign::Positive => match params.case() {
            CaseLabel::CaseI => Classification::Thin,
            CaseLabel::CaseII if a > c => Classification::Thin,
            CaseLabel::CaseII => Classification::TwoDeltaDisjoint,
            CaseLabel::CaseIII if c <= b => Classification::Thin,
            CaseLabel::CaseIII => Classification::Overlap {
                grading: i64::from(c - b),
                high_rank: u64::from(b),
                low_rank: u64::from(a - b - 1),
            },
        },
    }
}

/// Shape read off a computed table.
pub fn classify_table(table: &HfkTable) -> Result<Classification, String> {
    let deltas = table.deltas();
    match deltas.as_slice() {
        [_] => Ok(Classification::Thin),
        [low, high] => {
            if high.twice() - low.twice() != 2 {
                return Err(format!("delta gradings {low} and {high} are not consecutive"));
            }
            let lo: BTreeSet<i64> = table.generators.alexander_support(*low).into_iter().collect();
            let hi: BTreeSet<i64> = table.generators.alexander_support(*high).into_iter().collect();
            let shared: Vec<i64> = lo.intersection(&hi).copied().collect();
            match shared.as_slice() {
                [] => Ok(Classification::TwoDeltaDisjoint),
                [x, y] if *x == -*y && *y > 0 => Ok(Classification::Overlap {
                    grading: *y,
                    high_rank: table.rank(*y, *high),
                    low_rank: table.rank(*y, *low),
                }),
                _ => Err(format!("deltas share Alexander gradings {shared:?}")),
            }
        }
        _ => Err(format!("{} delta gradings present", deltas.len())),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail(String),
    Skipped(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub outcome: Outcome,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    pub params: TangleParams,
    pub table: Option<HfkTable>,
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| !matches!(c.outcome, Outcome::Fail(_)))
    }

    pub fn failures(&self) -> Vec<&Check> {
        self.checks
            .iter()
            .filter(|c| matches!(c.outcome, Outcome::Fail(_)))
            .collect()
    }
}

pub const CHECK_NAMES: [&str; 7] = [
    "euler_characteristic",
    "delta_symmetry",
    "classification",
    "thin_ranks",
    "overlap_ranks",
    "rank_parity",
    "geometric_agreement",
];

fn outcome(ok: bool, why: impl FnOnce() -> String) -> Outcome {
    if ok {
        Outcome::Pass
    } else {
        Outcome::Fail(why())
    }
}

/// Run every check on the table for `params`. Failures are report entries.
pub fn verify(params: TangleParams) -> VerificationReport {
    let table = match compute_hfk(params) {
        Ok(t) => t,
        Err(e) => {
            let checks = CHECK_NAMES
                .iter()
                .map(|&name| Check {
                    name,
                    outcome: Outcome::Fail(e.to_string()),
                })
                .collect();
            return VerificationReport {
                params,
                table: None,
                checks,
            };
        }
    };
    let (p, q, r) = params.pretzel_triple();
    let fox = pretzel_alexander(p, q, r);
    let predicted = classify(params);
    let observed = classify_table(&table);

    let checks = vec![
        Check {
            name: CHECK_NAMES[0],
            outcome: check_euler(&table, &fox),
        },
        Check {
            name: CHECK_NAMES[1],
            outcome: check_symmetry(&table),
        },
        Check {
            name: CHECK_NAMES[2],
            outcome: match &observed {
                Ok(c) => outcome(*c == predicted, || {
                    format!("table is {c}, parameters predict {predicted}")
                }),
                Err(e) => Outcome::Fail(e.clone()),
            },
        },
        Check {
            name: CHECK_NAMES[3],
            outcome: check_thin_ranks(&table, predicted, &fox),
        },
        Check {
            name: CHECK_NAMES[4],
            outcome: check_overlap(&table, predicted),
        },
        Check {
            name: CHECK_NAMES[5],
            outcome: check_parity(&table, pretzel_determinant(p, q, r)),
        },
        Check {
            name: CHECK_NAMES[6],
            outcome: check_geometry(params),
        },
    ];
    VerificationReport {
        params,
        table: Some(table),
        checks,
    }
}

fn check_euler(table: &HfkTable, fox: &Result<LaurentPolynomial, DiagramError>) -> Outcome {
    let fox = match fox {
        Ok(f) => f,
        Err(e) => return Outcome::Fail(e.to_string()),
    };
    match table.euler_characteristic() {
        Ok(chi) => outcome(chi == *fox, || format!("Euler characteristic {chi} differs from {fox}")),
        Err(e) => Outcome::Fail(e.to_string()),
    }
}

fn check_symmetry(table: &HfkTable) -> Outcome {
    let bad: Vec<Generator> = table
        .generators
        .iter()
        .filter(|(g, r)| table.rank(-g.alexander, g.delta) != *r)
        .map(|(g, _)| g)
        .collect();
    outcome(bad.is_empty(), || format!("rank at {bad:?} differs from its mirror"))
}

fn check_thin_ranks(
    table: &HfkTable,
    predicted: Classification,
    fox: &Result<LaurentPolynomial, DiagramError>,
) -> Outcome {
    if predicted != Classification::Thin {
        return Outcome::Skipped("not thin".into());
    }
    let fox = match fox {
        Ok(f) => f,
        Err(e) => return Outcome::Fail(e.to_string()),
    };
    let profile = table.generators.alexander_profile();
    let mut support: BTreeSet<i64> = profile.keys().copied().collect();
    support.extend(fox.terms().map(|(e, _)| e));
    let bad: Vec<i64> = support
        .into_iter()
        .filter(|s| BigInt::from(profile.get(s).copied().unwrap_or(0)) != fox.coeff(*s).abs())
        .collect();
    outcome(bad.is_empty(), || {
        format!("ranks differ from |coefficients| at s = {bad:?}")
    })
}

fn check_overlap(table: &HfkTable, predicted: Classification) -> Outcome {
    let Classification::Overlap {
        grading,
        high_rank,
        low_rank,
    } = predicted
    else {
        return Outcome::Skipped("no overlap".into());
    };
    let deltas = table.deltas();
    let (Some(low), Some(high)) = (deltas.first(), deltas.last()) else {
        return Outcome::Fail("empty table".into());
    };
    let found: Vec<(u64, u64)> = [grading, -grading]
        .iter()
        .map(|&s| (table.rank(s, *high), table.rank(s, *low)))
        .collect();
    outcome(found.iter().all(|&f| f == (high_rank, low_rank)), || {
        format!("ranks at ±{grading} are {found:?}, expected ({high_rank}, {low_rank})")
    })
}

fn check_parity(table: &HfkTable, determinant: u64) -> Outcome {
    let total = table.total_rank();
    if total % 2 != 1 || total < determinant || !(total - determinant).is_multiple_of(2) {
        return Outcome::Fail(format!(
            "total rank {total} incompatible with determinant {determinant}"
        ));
    }
    let params = table.params;
    for curve in pretzel_tangle_curves(params.a, params.b) {
        let reduced = match pair_curve(params.closure, params.c, &curve) {
            Ok(r) => r.total_rank(),
            Err(e) => return Outcome::Fail(e.to_string()),
        };
        let expected_unreduced = match curve.kind {
            CurveKind::Special14(k) | CurveKind::Special23(k) => 4 * u64::from(k),
            CurveKind::Rational(s) => {
                let CurveKind::Rational(red) = closure_curve(params.closure, params.c).kind else {
                    unreachable!()
                };
                match det_pair_count(red, s) {
                    Ok(n) => 2 * n,
                    Err(e) => return Outcome::Fail(e.to_string()),
                }
            }
        };
        if 2 * reduced != expected_unreduced {
            return Outcome::Fail(format!(
                "{curve}: {reduced} generators from {expected_unreduced} intersection points"
            ));
        }
    }
    Outcome::Pass
}

/// Recompute every rational-rational pairing by intersecting lifted lines.
pub fn check_geometry(params: TangleParams) -> Outcome {
    let red = closure_curve(params.closure, params.c);
    for curve in pretzel_tangle_curves(params.a, params.b) {
        if !matches!(curve.kind, CurveKind::Rational(_)) {
            continue;
        }
        let result: Result<(), String> = (|| {
            let unreduced = enumerate_geometric_pairing(&red, &curve).map_err(|e: GeomError| e.to_string())?;
            let geometric = reduce_generator_pairs(&unreduced).map_err(|e| e.to_string())?;
            let closed = pair_curve(params.closure, params.c, &curve).map_err(|e| e.to_string())?;
            if geometric != closed {
                return Err(format!("{curve}: geometry gives {geometric:?}, closed form {closed:?}"));
            }
            if unreduced.total_rank() != 2 * closed.total_rank() {
                return Err(format!("{curve}: {} intersection points", unreduced.total_rank()));
            }
            Ok(())
        })();
        if let Err(e) = result {
            return Outcome::Fail(e);
        }
    }
    Outcome::Pass
}

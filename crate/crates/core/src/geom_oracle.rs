//! Geometric recomputation of rational-rational pairings.
//!
//! The 4-punctured sphere is the quotient of `R^2 \ Z^2` by the group `G`
//! generated by translations in `2Z^2` and the half-turns `P -> 2v - P`
//! about lattice points `v`. The parametrizing square lifts to the integer
//! grid; a lattice point with even `y` is a bottom puncture (sign `+1`),
//! odd `y` a top puncture (sign `-1`). A rational curve `r(p/q)` is the
//! image of a straight line `p x - q y = d` with `d` not an integer.
//!
//! Alexander gradings are computed entirely inside unit grid squares. For a
//! square `Q` and two boundary points `u`, `w`, let `κ(u → w)` be the sum of
//! puncture signs over the corners of `Q` passed when walking clockwise along
//! `∂Q` from `u` to `w`. Each face carries two punctures of each sign, so the
//! clockwise and counter-clockwise walks give the same answer up to sign.
//!
//! * Along one curve, consecutive grid crossings `u` then `w` (both on `∂Q`)
//!   satisfy `A(w) - A(u) = κ(w → u)`. The additive constant is fixed by
//!   pinning the least value to the curve's stored minimum.
//! * An intersection point `z ∈ Q` of the closing curve (through `x ∈ ∂Q`)
//!   and a tangle curve (through `y ∈ ∂Q`) gets `A(z) = A(y) - A(x) + κ(x → y)`.

use std::cmp::Ordering;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::algebra::{Generator, GeneratorMultiset, HalfInteger};
use crate::tangle_curves::{CurveKind, GradedCurve, ReducedSlope};

pub type Rational = Ratio<i128>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GeomError {
    #[error("slopes {0} and {1} are equal; the curves are not transverse")]
    ParallelSlopes(ReducedSlope, ReducedSlope),
    #[error("curve {0} is not a rational curve")]
    NotRational(GradedCurve),
    #[error("curve {curve} spans gradings {found_min}..{found_max} along its lift")]
    GradingSpan {
        curve: GradedCurve,
        found_min: i64,
        found_max: i64,
    },
    #[error("every candidate offset put an intersection point on the grid")]
    Degenerate,
}

/// Sign of the puncture at lattice height `y`: bottom punctures are
/// positive, top punctures negative.
pub fn puncture_sign(y: i128) -> i64 {
    if y.is_even() {
        1
    } else {
        -1
    }
}

/// `|r1 s2 - r2 s1|`, the number of reduced generators of the pairing.
pub fn det_pair_count(s1: ReducedSlope, s2: ReducedSlope) -> Result<u64, GeomError> {
    if s1 == s2 {
        return Err(GeomError::ParallelSlopes(s1, s2));
    }
    let d = s1.numerator() * s2.denominator() - s2.numerator() * s1.denominator();
    Ok(d.unsigned_abs())
}

type Point = (Rational, Rational);

/// The line `p x - q y = offset` of slope `p/q`, parametrized as
/// `base + t (q, p)`; the sphere curve is the image of `t ∈ [0, 2)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftedLine {
    pub slope: ReducedSlope,
    pub offset: Rational,
}

impl LiftedLine {
    pub fn new(slope: ReducedSlope, offset: Rational) -> Self {
        Self { slope, offset }
    }

    fn pq(&self) -> (i128, i128) {
        (i128::from(self.slope.numerator()), i128::from(self.slope.denominator()))
    }

    fn base(&self) -> Point {
        let (p, q) = self.pq();
        if q != 0 {
            (Rational::zero(), -self.offset / Rational::from(q))
        } else {
            (self.offset / Rational::from(p), Rational::zero())
        }
    }

    fn at(&self, t: Rational) -> Point {
        let (p, q) = self.pq();
        let (bx, by) = self.base();
        (bx + t * Rational::from(q), by + t * Rational::from(p))
    }

    fn param_of(&self, pt: &Point) -> Rational {
        let (p, q) = self.pq();
        let (bx, by) = self.base();
        if q != 0 {
            (pt.0 - bx) / Rational::from(q)
        } else {
            (pt.1 - by) / Rational::from(p)
        }
    }

    /// Parameters in `[t0, t1)` where the line meets the grid, ascending.
    fn crossings(&self, t0: Rational, t1: Rational) -> Vec<Rational> {
        let (p, q) = self.pq();
        let (bx, by) = self.base();
        let mut ts = Vec::new();
        for (step, start) in [(q, bx), (p, by)] {
            if step == 0 {
                continue;
            }
            let step_r = Rational::from(step);
            let ends = [start + t0 * step_r, start + t1 * step_r];
            let lo = ends[0].min(ends[1]).floor().to_integer();
            let hi = ends[0].max(ends[1]).ceil().to_integer();
            for k in lo..=hi {
                let t = (Rational::from(k) - start) / step_r;
                if t >= t0 && t < t1 {
                    ts.push(t);
                }
            }
        }
        ts.sort();
        ts.dedup();
        ts
    }

    fn crossing_before(&self, t: Rational) -> Rational {
        *self
            .crossings(t - Rational::from(2), t)
            .last()
            .expect("a line meets the grid within one period")
    }
}

fn on_grid(pt: &Point) -> bool {
    pt.0.is_integer() || pt.1.is_integer()
}

/// Clockwise arc position on `∂Q` (perimeter 4) starting from the top-left corner.
fn boundary_position(square: (i128, i128), pt: &Point) -> Rational {
    let (i, j) = (Rational::from(square.0), Rational::from(square.1));
    let one = Rational::one();
    let (x, y) = (pt.0, pt.1);
    if y == j + one {
        x - i
    } else if x == i + one {
        one + (j + one - y)
    } else if y == j {
        Rational::from(2) + (i + one - x)
    } else {
        debug_assert_eq!(x, i);
        Rational::from(3) + (y - j)
    }
}

/// `κ(from → to)`: sum of puncture signs over corners passed going clockwise.
fn kappa_clockwise(square: (i128, i128), from: &Point, to: &Point) -> i64 {
    let (i, j) = square;
    let corners = [(0, j + 1), (1, j + 1), (2, j), (3, j)];
    let four = Rational::from(4);
    let start = boundary_position(square, from);
    let span = (boundary_position(square, to) - start + four) % four;
    let _ = i;
    corners
        .iter()
        .filter(|(pos, _)| {
            let d = (Rational::from(*pos) - start + four) % four;
            d > Rational::zero() && d < span
        })
        .map(|(_, y)| puncture_sign(*y))
        .sum()
}

fn square_containing_segment(u: &Point, w: &Point) -> (i128, i128) {
    let two = Rational::from(2);
    (
        ((u.0 + w.0) / two).floor().to_integer(),
        ((u.1 + w.1) / two).floor().to_integer(),
    )
}

/// Alexander gradings of the grid crossings of one period of a lifted line.
#[derive(Clone, Debug)]
struct CurvePotential {
    params: Vec<Rational>,
    values: Vec<i64>,
}

impl CurvePotential {
    fn new(line: &LiftedLine, curve: &GradedCurve) -> Result<Self, GeomError> {
        let two = Rational::from(2);
        let params = line.crossings(Rational::zero(), two);
        let extended = line.crossings(Rational::zero(), two + two);
        let mut values = vec![0i64];
        for w in extended.windows(2) {
            let (u, v) = (line.at(w[0]), line.at(w[1]));
            let square = square_containing_segment(&u, &v);
            values.push(values.last().unwrap() + kappa_clockwise(square, &v, &u));
        }
        assert_eq!(
            values[params.len()],
            values[0],
            "grading along a closed curve must close up"
        );
        values.truncate(params.len());
        let lo = *values.iter().min().expect("nonempty");
        let hi = *values.iter().max().expect("nonempty");
        if hi - lo != curve.max - curve.min {
            return Err(GeomError::GradingSpan {
                curve: *curve,
                found_min: lo,
                found_max: hi,
            });
        }
        for v in &mut values {
            *v += curve.min - lo;
        }
        Ok(Self { params, values })
    }

    fn at_param(&self, t: Rational) -> i64 {
        let two = Rational::from(2);
        let r = t - two * (t / two).floor();
        let idx = self.params.binary_search(&r).expect("parameter is a grid crossing");
        self.values[idx]
    }
}

fn rational_slope(curve: &GradedCurve) -> Result<ReducedSlope, GeomError> {
    match curve.kind {
        CurveKind::Rational(s) => Ok(s),
        _ => Err(GeomError::NotRational(*curve)),
    }
}

/// Grid-crossing Alexander gradings along one lift of a rational curve,
/// anchored so the least value is the curve's stored minimum.
pub fn curve_gradings(curve: &GradedCurve) -> Result<Vec<i64>, GeomError> {
    let slope = rational_slope(curve)?;
    let line = LiftedLine::new(slope, candidate_offsets()[0].0);
    Ok(CurvePotential::new(&line, curve)?.values)
}

/// Compare `n1/d1` with `n2/d2` for positive denominators.
fn cmp_slopes(s1: ReducedSlope, s2: ReducedSlope) -> Ordering {
    match (s1.is_infinite(), s2.is_infinite()) {
        (true, true) => Ordering::Equal,
        (true, false) => Ordering::Greater,
        (false, true) => Ordering::Less,
        _ => (s1.numerator() * s2.denominator()).cmp(&(s2.numerator() * s1.denominator())),
    }
}

/// Delta grading of every intersection point of the two straight lines,
/// read off from the angle between them against the horizontal line field:
/// `1/2 + ⌈(θ_tangle - θ_closing)/π⌉` with the tangle curve's angle taken in
/// `(-π/2, π/2]` and the closing curve's in `[0, π)`.
pub fn line_field_delta(closing: ReducedSlope, tangle: ReducedSlope) -> HalfInteger {
    let closing_nonneg = closing.is_infinite() || closing.numerator() >= 0;
    let shift = if closing_nonneg && !closing.is_infinite() && cmp_slopes(tangle, closing) == Ordering::Greater {
        1
    } else if !closing_nonneg && !tangle.is_infinite() && cmp_slopes(tangle, closing) != Ordering::Greater {
        -1
    } else {
        0
    };
    HalfInteger::from_twice(1 + 2 * shift)
}

fn candidate_offsets() -> Vec<(Rational, Rational)> {
    let half = Rational::new(1, 2);
    [(1009, 997), (1013, 991), (1019, 983), (1021, 977)]
        .iter()
        .map(|&(a, b)| (half + Rational::new(1, a), half + Rational::new(1, b)))
        .collect()
}

/// Solve `p vx - q vy = k` over the integers (`gcd(p, q) = 1`).
fn solve_normal(p: i128, q: i128, k: i128) -> (i128, i128) {
    let e = p.extended_gcd(&-q);
    debug_assert!(e.gcd.abs() == 1);
    let s = k / e.gcd;
    (e.x * s, e.y * s)
}

/// An intersection point between the closing curve and a tangle curve.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntersectionPoint {
    pub position: (Rational, Rational),
    pub alexander: i64,
    pub delta: HalfInteger,
}

/// All `2Δ` intersection points of two rational curves, with gradings.
/// `closing` plays the red curve and `tangle` the blue one.
pub fn intersection_points(closing: &GradedCurve, tangle: &GradedCurve) -> Result<Vec<IntersectionPoint>, GeomError> {
    let s1 = rational_slope(closing)?;
    let s2 = rational_slope(tangle)?;
    det_pair_count(s1, s2)?;
    for (d1, d2) in candidate_offsets() {
        if let Some(points) = intersect_with_offsets(closing, tangle, s1, s2, d1, d2)? {
            return Ok(points);
        }
    }
    Err(GeomError::Degenerate)
}

fn intersect_with_offsets(
    closing: &GradedCurve,
    tangle: &GradedCurve,
    s1: ReducedSlope,
    s2: ReducedSlope,
    d1: Rational,
    d2: Rational,
) -> Result<Option<Vec<IntersectionPoint>>, GeomError> {
    let red = LiftedLine::new(s1, d1);
    let blue = LiftedLine::new(s2, d2);
    let red_pot = CurvePotential::new(&red, closing)?;
    let blue_pot = CurvePotential::new(&blue, tangle)?;
    let delta = line_field_delta(s1, s2);

    let (p2, q2) = blue.pq();
    let normal = |pt: &Point| Rational::from(p2) * pt.0 - Rational::from(q2) * pt.1;
    let v0 = normal(&red.at(Rational::zero()));
    // rate of change of the blue normal coordinate along the red line
    let rate = {
        let (p1, q1) = red.pq();
        Rational::from(p2 * q1 - q2 * p1)
    };
    let v_end = v0 + rate * Rational::from(2);
    let (lo, hi) = (v0.min(v_end), v0.max(v_end));

    let mut points = Vec::new();
    for family in [1i128, -1] {
        let start = d2 * Rational::from(family);
        let k_lo = ((lo - start) / Rational::from(2)).floor().to_integer() - 1;
        let k_hi = ((hi - start) / Rational::from(2)).ceil().to_integer() + 1;
        for k in k_lo..=k_hi {
            let level = start + Rational::from(2 * k);
            let t = (level - v0) / rate;
            if t < Rational::zero() || t >= Rational::from(2) {
                continue;
            }
            let z = red.at(t);
            if on_grid(&z) {
                return Ok(None);
            }
            let square = (z.0.floor().to_integer(), z.1.floor().to_integer());

            let x = red.at(red.crossing_before(t));
            let x_grading = red_pot.at_param(red.crossing_before(t));

            let image = LiftedLine::new(s2, level);
            let tz = image.param_of(&z);
            let y = image.at(image.crossing_before(tz));
            // pull y back to the base blue line through the deck transformation
            let (vx, vy) = solve_normal(p2, q2, k);
            let (vx, vy) = (Rational::from(2 * vx), Rational::from(2 * vy));
            let y_base = if family == 1 {
                (y.0 - vx, y.1 - vy)
            } else {
                (vx - y.0, vy - y.1)
            };
            let y_grading = blue_pot.at_param(blue.param_of(&y_base));

            let alexander = y_grading - x_grading + kappa_clockwise(square, &x, &y);
            points.push(IntersectionPoint {
                position: z,
                alexander,
                delta,
            });
        }
    }
    Ok(Some(points))
}

/// Unreduced generators of the pairing, one per intersection point.
pub fn enumerate_geometric_pairing(
    closing: &GradedCurve,
    tangle: &GradedCurve,
) -> Result<GeneratorMultiset, GeomError> {
    Ok(intersection_points(closing, tangle)?
        .into_iter()
        .map(|pt| Generator::new(pt.alexander, pt.delta))
        .collect())
}

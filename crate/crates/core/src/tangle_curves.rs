//! Graded immersed curves making up the invariant of the `(2a, -2b-1)`
//! pretzel tangle, and the rational curve of the closing `±1/(2c+1)` tangle.

use std::fmt;

use num_integer::Integer;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CurveError {
    #[error("tangle parameters must be positive, got a={a} b={b} c={c}")]
    NonPositive { a: u32, b: u32, c: u32 },
    #[error("slope -A/B is only defined for a > b + 1, got a={a} b={b}")]
    NotCaseThree { a: u32, b: u32 },
    #[error("slope {0}/{1} has zero numerator and denominator")]
    DegenerateSlope(i64, i64),
}

/// Which rational tangle closes the pretzel tangle.
///
/// `Positive` is the third band `+(2c+1)` and pairs with `r(-1/(2c+1))`;
/// `Negative` is the band `-(2c+1)` and pairs with `r(1/(2c+1))`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ClosureSign {
    Positive,
    Negative,
}

impl ClosureSign {
    pub fn symbol(self) -> char {
        match self {
            ClosureSign::Positive => '+',
            ClosureSign::Negative => '-',
        }
    }
}

impl fmt::Display for ClosureSign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

/// The knot `P(2a, -2b-1, ±(2c+1))`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TangleParams {
    pub a: u32,
    pub b: u32,
    pub c: u32,
    pub closure: ClosureSign,
}

impl TangleParams {
    pub fn new(a: u32, b: u32, c: u32, closure: ClosureSign) -> Result<Self, CurveError> {
        if a == 0 || b == 0 || c == 0 {
            return Err(CurveError::NonPositive { a, b, c });
        }
        Ok(Self { a, b, c, closure })
    }

    /// Twist counts `(p, q, r)` of the three pretzel bands.
    pub fn pretzel_triple(&self) -> (i64, i64, i64) {
        let r = 2 * i64::from(self.c) + 1;
        let r = match self.closure {
            ClosureSign::Positive => r,
            ClosureSign::Negative => -r,
        };
        (2 * i64::from(self.a), -2 * i64::from(self.b) - 1, r)
    }

    pub fn case(&self) -> CaseLabel {
        case_of(self.a, self.b)
    }
}

impl fmt::Display for TangleParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (p, q, r) = self.pretzel_triple();
        write!(f, "P({p},{q},{r})")
    }
}

/// A reduced fraction `numerator/denominator` with `denominator >= 0`;
/// `1/0` is the slope at infinity.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct ReducedSlope {
    num: i64,
    den: i64,
}

impl ReducedSlope {
    pub fn new(num: i64, den: i64) -> Result<Self, CurveError> {
        if num == 0 && den == 0 {
            return Err(CurveError::DegenerateSlope(num, den));
        }
        let g = num.gcd(&den);
        let (mut num, mut den) = (num / g, den / g);
        if den < 0 || (den == 0 && num < 0) {
            num = -num;
            den = -den;
        }
        Ok(Self { num, den })
    }

    pub fn numerator(self) -> i64 {
        self.num
    }

    pub fn denominator(self) -> i64 {
        self.den
    }

    pub fn is_infinite(self) -> bool {
        self.den == 0
    }
}

impl fmt::Display for ReducedSlope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl fmt::Debug for ReducedSlope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CurveKind {
    Rational(ReducedSlope),
    /// `i_k(1,4)`, supported near the top edge.
    Special14(u32),
    /// `i_k(2,3)`, supported near the bottom edge.
    Special23(u32),
}

/// A curve together with the least and greatest Alexander gradings of its
/// intersections with the parametrizing square.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GradedCurve {
    pub kind: CurveKind,
    pub min: i64,
    pub max: i64,
}

impl GradedCurve {
    pub fn special14(k: u32, min: i64) -> Self {
        Self {
            kind: CurveKind::Special14(k),
            min,
            max: min + 4 * i64::from(k),
        }
    }

    pub fn special23(k: u32, min: i64) -> Self {
        Self {
            kind: CurveKind::Special23(k),
            min,
            max: min + 4 * i64::from(k),
        }
    }

    pub fn rational(slope: ReducedSlope, min: i64, max: i64) -> Self {
        Self {
            kind: CurveKind::Rational(slope),
            min,
            max,
        }
    }

    /// The grading-reversal involution: `(kind, m, M) -> (swap(kind), -M, -m)`.
    pub fn reversed(&self) -> Self {
        let kind = match self.kind {
            CurveKind::Special14(k) => CurveKind::Special23(k),
            CurveKind::Special23(k) => CurveKind::Special14(k),
            r @ CurveKind::Rational(_) => r,
        };
        Self {
            kind,
            min: -self.max,
            max: -self.min,
        }
    }
}

impl fmt::Display for GradedCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            CurveKind::Rational(s) => write!(f, "r({s})")?,
            CurveKind::Special14(k) => write!(f, "i_{k}(1,4)")?,
            CurveKind::Special23(k) => write!(f, "i_{k}(2,3)")?,
        }
        write!(f, "t^{}t^{}", self.min, self.max)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CaseLabel {
    /// `a <= b`
    CaseI,
    /// `a = b + 1`
    CaseII,
    /// `a > b + 1`
    CaseIII,
}

pub fn case_of(a: u32, b: u32) -> CaseLabel {
    if a <= b {
        CaseLabel::CaseI
    } else if a == b + 1 {
        CaseLabel::CaseII
    } else {
        CaseLabel::CaseIII
    }
}

/// Data of the Case III rational curve `r(-A/B) t^{-M} t^{M}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GeneralSlope {
    /// `A = 2(a-b) - 1`, odd.
    pub a_num: i64,
    /// `B = 4b(a-b-1) + 2a = A(2b+1) + 1`, even.
    pub b_den: i64,
    /// `M = 2b + 2`.
    pub max: i64,
}

pub fn slope_ab(a: u32, b: u32) -> Result<GeneralSlope, CurveError> {
    if case_of(a, b) != CaseLabel::CaseIII {
        return Err(CurveError::NotCaseThree { a, b });
    }
    let (a, b) = (i64::from(a), i64::from(b));
    Ok(GeneralSlope {
        a_num: 2 * (a - b) - 1,
        b_den: 4 * b * (a - b - 1) + 2 * a,
        max: 2 * b + 2,
    })
}

/// The rational curve `r(∓1/(2c+1)) t^{-2c-1} t^{2c+1}` of the closing tangle.
pub fn closure_curve(closure: ClosureSign, c: u32) -> GradedCurve {
    let q = 2 * i64::from(c) + 1;
    let num = match closure {
        ClosureSign::Positive => -1,
        ClosureSign::Negative => 1,
    };
    let slope = ReducedSlope::new(num, q).expect("nonzero denominator");
    GradedCurve::rational(slope, -q, q)
}

/// The curves of the `(2a, -2b-1)` pretzel tangle, in display order.
pub fn pretzel_tangle_curves(a: u32, b: u32) -> Vec<GradedCurve> {
    let (ai, bi) = (i64::from(a), i64::from(b));
    let mut out = Vec::new();
    match case_of(a, b) {
        CaseLabel::CaseI => {
            for j in 1..a {
                out.push(GradedCurve::special14(j, -2 * bi - 2));
                out.push(GradedCurve::special14(j, -2 * bi));
            }
            out.push(GradedCurve::special14(a, -2 * bi - 2));
            let slope = ReducedSlope::new(1, 2 * ai).expect("a > 0");
            for i in 0..=2 * (bi - ai) {
                let m = -2 * bi + 2 * i;
                out.push(GradedCurve::rational(slope, m, m + 4 * ai));
            }
            out.push(GradedCurve::special23(a, 2 * bi - 4 * ai + 2));
            for j in (1..a).rev() {
                let k = i64::from(j);
                out.push(GradedCurve::special23(j, 2 * bi - 4 * k));
                out.push(GradedCurve::special23(j, 2 * bi - 4 * k + 2));
            }
        }
        CaseLabel::CaseII => {
            for j in 1..a {
                out.push(GradedCurve::special14(j, -2 * ai));
                out.push(GradedCurve::special14(j, -2 * ai + 2));
            }
            let slope = ReducedSlope::new(-1, 2 * ai).expect("a > 0");
            out.push(GradedCurve::rational(slope, -2 * ai, 2 * ai));
            for j in (1..a).rev() {
                let k = i64::from(j);
                out.push(GradedCurve::special23(j, 2 * ai - 4 * k - 2));
                out.push(GradedCurve::special23(j, 2 * ai - 4 * k));
            }
        }
        CaseLabel::CaseIII => {
            for j in 1..=b {
                out.push(GradedCurve::special14(j, -2 * bi - 2));
                out.push(GradedCurve::special14(j, -2 * bi));
            }
            let g = slope_ab(a, b).expect("case III");
            let slope = ReducedSlope::new(-g.a_num, g.b_den).expect("B > 0");
            out.push(GradedCurve::rational(slope, -g.max, g.max));
            out.push(GradedCurve::special23(b, -2 * bi));
            out.push(GradedCurve::special23(b, -2 * bi + 2));
            for j in (1..b).rev() {
                let k = i64::from(j);
                out.push(GradedCurve::special23(j, 2 * bi - 4 * k));
                out.push(GradedCurve::special23(j, 2 * bi - 4 * k + 2));
            }
        }
    }
    out
}

//! Alexander polynomial of a pretzel knot from its diagram, via the
//! Wirtinger presentation and Fox calculus.
//!
//! The standard pretzel form has three vertical bands of half-twists. Each
//! crossing has four ports `TL`, `TR`, `BL`, `BR`; consecutive crossings in a
//! band are joined `BL-TL` and `BR-TR`, the top of band `i` (`TR`) meets the
//! top of band `i+1` (`TL`), and likewise at the bottom. A strand crosses
//! from `TL` to `BR` or from `TR` to `BL`; in a positive band the `TL-BR`
//! strand is the over-strand.

use num_bigint::BigInt;
use thiserror::Error;

use crate::algebra::{AlgebraError, Coefficient, LaurentPoly};
use crate::LaurentPolynomial;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DiagramError {
    #[error("P({0},{1},{2}) has a zero twist")]
    ZeroTwist(i64, i64, i64),
    #[error("P({0},{1},{2}) is a link, not a knot")]
    Link(i64, i64, i64),
    #[error("Alexander polynomial normalization failed: {0}")]
    Normalization(#[from] AlgebraError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Port {
    TL,
    TR,
    BL,
    BR,
}

impl Port {
    fn through(self) -> Self {
        match self {
            Port::TL => Port::BR,
            Port::BR => Port::TL,
            Port::TR => Port::BL,
            Port::BL => Port::TR,
        }
    }

    fn position(self) -> (i64, i64) {
        match self {
            Port::TL => (-1, 1),
            Port::TR => (1, 1),
            Port::BL => (-1, -1),
            Port::BR => (1, -1),
        }
    }

    fn index(self) -> usize {
        self as usize
    }
}

/// One crossing: the over-arc, the incoming and outgoing under-arcs, and the sign.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Crossing {
    pub over: usize,
    pub under_in: usize,
    pub under_out: usize,
    pub sign: i8,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PretzelDiagram {
    pub twists: (i64, i64, i64),
    pub crossings: Vec<Crossing>,
}

impl PretzelDiagram {
    pub fn arc_count(&self) -> usize {
        self.crossings.len()
    }
}

pub fn build_pretzel_diagram(p: i64, q: i64, r: i64) -> Result<PretzelDiagram, DiagramError> {
    let bands = [p, q, r];
    if bands.contains(&0) {
        return Err(DiagramError::ZeroTwist(p, q, r));
    }
    if bands.iter().filter(|n| *n % 2 == 0).count() != 1 {
        return Err(DiagramError::Link(p, q, r));
    }

    let mut band_of = Vec::new();
    let mut first = Vec::new();
    for (b, n) in bands.iter().enumerate() {
        first.push(band_of.len());
        for _ in 0..n.unsigned_abs() {
            band_of.push(b);
        }
    }
    let n = band_of.len();
    let len = |b: usize| bands[b].unsigned_abs() as usize;
    let last = |b: usize| first[b] + len(b) - 1;

    // port adjacency: conn[crossing][port] = (crossing, port)
    let mut conn = vec![[(usize::MAX, Port::TL); 4]; n];
    let mut link = |a: (usize, Port), b: (usize, Port)| {
        conn[a.0][a.1.index()] = b;
        conn[b.0][b.1.index()] = a;
    };
    for b in 0..3 {
        for k in first[b]..last(b) {
            link((k, Port::BL), (k + 1, Port::TL));
            link((k, Port::BR), (k + 1, Port::TR));
        }
        let next = (b + 1) % 3;
        link((first[b], Port::TR), (first[next], Port::TL));
        link((last(b), Port::BR), (last(next), Port::BL));
    }

    let over_tl_br = |i: usize| bands[band_of[i]] > 0;
    let is_over = |i: usize, port: Port| matches!(port, Port::TL | Port::BR) == over_tl_br(i);

    // traverse the knot once, recording (crossing, entry port, exit port)
    let mut passages = Vec::with_capacity(2 * n);
    let start = (0, Port::TL);
    let mut cur = start;
    loop {
        let exit = cur.1.through();
        passages.push((cur.0, cur.1, exit));
        cur = conn[cur.0][exit.index()];
        if cur == start {
            break;
        }
    }
    debug_assert_eq!(passages.len(), 2 * n, "a knot passes each crossing twice");

    let dir = |from: Port, to: Port| {
        let (a, b) = (from.position(), to.position());
        (b.0 - a.0, b.1 - a.1)
    };
    let mut over_dir = vec![(0, 0); n];
    let mut under_dir = vec![(0, 0); n];
    for &(i, from, to) in &passages {
        if is_over(i, from) {
            over_dir[i] = dir(from, to);
        } else {
            under_dir[i] = dir(from, to);
        }
    }

    // arcs run from one under-passage to the next
    let s0 = passages
        .iter()
        .position(|&(i, from, _)| !is_over(i, from))
        .expect("crossings exist");
    let mut over = vec![0; n];
    let mut under_in = vec![0; n];
    let mut under_out = vec![0; n];
    let mut arc = 0;
    for j in 0..passages.len() {
        let (i, from, _) = passages[(s0 + 1 + j) % passages.len()];
        if is_over(i, from) {
            over[i] = arc;
        } else {
            under_in[i] = arc;
            arc = (arc + 1) % n;
            under_out[i] = arc;
        }
    }

    let crossings = (0..n)
        .map(|i| {
            let (o, u) = (over_dir[i], under_dir[i]);
            let sign = if o.0 * u.1 - o.1 * u.0 > 0 { 1 } else { -1 };
            Crossing {
                over: over[i],
                under_in: under_in[i],
                under_out: under_out[i],
                sign,
            }
        })
        .collect();
    Ok(PretzelDiagram {
        twists: (p, q, r),
        crossings,
    })
}

/// A letter `x_g^{±1}` of a group word.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Letter {
    pub generator: usize,
    pub exponent: i8,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WirtingerPresentation {
    pub generator_count: usize,
    /// Relators `x_o^s x_i x_o^{-s} x_k^{-1}`, one per crossing.
    pub relations: Vec<Vec<Letter>>,
}

pub fn wirtinger_presentation(d: &PretzelDiagram) -> WirtingerPresentation {
    let l = |generator, exponent| Letter { generator, exponent };
    let relations = d
        .crossings
        .iter()
        .map(|c| {
            vec![
                l(c.over, c.sign),
                l(c.under_in, 1),
                l(c.over, -c.sign),
                l(c.under_out, -1),
            ]
        })
        .collect();
    WirtingerPresentation {
        generator_count: d.arc_count(),
        relations,
    }
}

/// Fox derivative `∂w/∂x_g`, abelianized by sending every generator to `t`.
pub fn fox_derivative(word: &[Letter], generator: usize) -> LaurentPolynomial {
    let mut out = LaurentPolynomial::zero();
    let mut prefix = 0i64;
    for letter in word {
        let e = i64::from(letter.exponent);
        if letter.generator == generator {
            if e > 0 {
                out += &LaurentPolynomial::monomial(BigInt::from(1), prefix);
            } else {
                out += &LaurentPolynomial::monomial(BigInt::from(-1), prefix - 1);
            }
        }
        prefix += e;
    }
    out
}

/// Inverse of `±t^k`, if the polynomial is such a unit.
fn unit_inverse<R: Coefficient>(p: &LaurentPoly<R>) -> Option<LaurentPoly<R>> {
    let mut terms = p.terms();
    let (exp, coeff) = terms.next()?;
    if terms.next().is_some() || !coeff.abs().is_one() {
        return None;
    }
    Some(LaurentPoly::monomial(coeff.clone(), -exp))
}

/// Determinant over `Z[t, t^-1]`: unit pivots are eliminated first, the
/// remaining block by fraction-free (Bareiss) elimination.
pub fn laurent_determinant<R: Coefficient>(matrix: &[Vec<LaurentPoly<R>>]) -> LaurentPoly<R> {
    let mut m = matrix.to_vec();
    let mut factor = LaurentPoly::one();
    while let Some((r, c, inv)) = m.iter().enumerate().find_map(|(r, row)| {
        row.iter()
            .enumerate()
            .find_map(|(c, e)| unit_inverse(e).map(|inv| (r, c, inv)))
    }) {
        // expanding along row r after clearing column c
        if (r + c) % 2 == 1 {
            factor = -factor;
        }
        factor = &factor * &m[r][c];
        let pivot_row = m.remove(r);
        for row in &mut m {
            let e = row.remove(c);
            if e.is_zero() {
                continue;
            }
            let scale = &e * &inv;
            for (j, x) in pivot_row.iter().enumerate().filter(|(j, _)| *j != c) {
                if !x.is_zero() {
                    let col = if j < c { j } else { j - 1 };
                    row[col] = &row[col] - &(&scale * x);
                }
            }
        }
    }
    &factor * &bareiss(m)
}

fn bareiss<R: Coefficient>(mut m: Vec<Vec<LaurentPoly<R>>>) -> LaurentPoly<R> {
    let n = m.len();
    if n == 0 {
        return LaurentPoly::one();
    }
    let mut negate = false;
    let mut prev = LaurentPoly::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    negate = !negate;
                }
                None => return LaurentPoly::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = num.div_exact(&prev).expect("Bareiss quotients are exact");
            }
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if negate {
        -det
    } else {
        det
    }
}

/// Normalized Alexander polynomial: Fox Jacobian with the last row and
/// column deleted.
pub fn fox_alexander(d: &PretzelDiagram) -> Result<LaurentPolynomial, DiagramError> {
    let pres = wirtinger_presentation(d);
    let n = pres.generator_count;
    let minor: Vec<Vec<LaurentPolynomial>> = pres.relations[..n - 1]
        .iter()
        .map(|rel| (0..n - 1).map(|g| fox_derivative(rel, g)).collect())
        .collect();
    Ok(laurent_determinant(&minor).normalize_alexander()?)
}

/// `|pq + qr + rp|`.
pub fn pretzel_determinant(p: i64, q: i64, r: i64) -> u64 {
    (p * q + q * r + r * p).unsigned_abs()
}

/// Alexander polynomial of `P(p, q, r)`.
pub fn pretzel_alexander(p: i64, q: i64, r: i64) -> Result<LaurentPolynomial, DiagramError> {
    fox_alexander(&build_pretzel_diagram(p, q, r)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(terms: &[(i64, i64)]) -> LaurentPolynomial {
        LaurentPolynomial::from_terms(terms.iter().map(|&(e, c)| (e, BigInt::from(c))))
    }

    #[test]
    fn crossing_counts() {
        assert_eq!(build_pretzel_diagram(2, -3, 5).unwrap().crossings.len(), 10);
        assert_eq!(build_pretzel_diagram(2, -3, -3).unwrap().arc_count(), 8);
        assert!(matches!(build_pretzel_diagram(2, -4, 6), Err(DiagramError::Link(..))));
        assert!(matches!(
            build_pretzel_diagram(2, 0, 5),
            Err(DiagramError::ZeroTwist(..))
        ));
    }

    #[test]
    fn wirtinger_relations_are_conjugations() {
        let d = build_pretzel_diagram(2, -3, 5).unwrap();
        let w = wirtinger_presentation(&d);
        assert_eq!(w.relations.len(), 10);
        for rel in &w.relations {
            assert_eq!(rel[0].generator, rel[2].generator);
            assert_eq!(rel[0].exponent, -rel[2].exponent);
        }
    }

    #[test]
    fn fox_derivative_of_relator() {
        let l = |generator, exponent| Letter { generator, exponent };
        let rel = [l(0, 1), l(1, 1), l(0, -1), l(2, -1)];
        assert_eq!(fox_derivative(&rel, 0), poly(&[(0, 1), (1, -1)]));
        assert_eq!(fox_derivative(&rel, 1), poly(&[(1, 1)]));
        assert_eq!(fox_derivative(&rel, 2), poly(&[(0, -1)]));
    }

    #[test]
    fn known_polynomials() {
        assert_eq!(
            pretzel_alexander(6, -3, 5).unwrap(),
            poly(&[(3, 1), (2, -2), (0, 3), (-2, -2), (-3, 1)])
        );
        let d = pretzel_alexander(2, -3, 5).unwrap();
        assert_eq!(d.eval_at_unit(true).magnitude(), &11u32.into());
        let d = pretzel_alexander(2, -3, -3).unwrap();
        assert_eq!(d.eval_at_unit(true).magnitude(), &3u32.into());
    }

    #[test]
    fn determinants() {
        assert_eq!(pretzel_determinant(2, -3, 5), 11);
        assert_eq!(pretzel_determinant(6, -3, 5), 3);
        assert_eq!(pretzel_determinant(2, -5, 5), 25);
    }

    #[test]
    fn determinant_with_and_without_unit_pivots() {
        let m = vec![
            vec![poly(&[(0, 2)]), poly(&[(1, 1)]), poly(&[(0, 1), (1, 1)])],
            vec![poly(&[(0, 3)]), poly(&[(0, 2)]), poly(&[(0, 0)])],
            vec![poly(&[(0, 1), (2, 1)]), poly(&[(0, 0)]), poly(&[(0, 2)])],
        ];
        let expected = bareiss(m.clone());
        assert_eq!(laurent_determinant(&m), expected);
        // 2*(4) - t*(6) + (1+t)*(-2-2t^2)
        assert_eq!(expected, poly(&[(0, 6), (1, -8), (2, -2), (3, -2)]));
    }

    #[test]
    fn small_determinant_matrix() {
        let m = vec![
            vec![poly(&[(0, 0)]), poly(&[(1, 1)])],
            vec![poly(&[(0, 2)]), poly(&[(0, 3)])],
        ];
        assert_eq!(laurent_determinant(&m), poly(&[(1, -2)]));
    }
}

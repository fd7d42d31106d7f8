//! The weighted knight-move graph on `Z²` and the two halves of its distance
//! bound: a finite exact scan near the origin, and a polynomial certificate
//! for the inductive step far away.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::{distances_from, LatticeGraph};
use crate::exact::{leq_scaled_sqrt, Zr2};
use crate::lattice::{Point, DIRS};

const KNIGHT: [Point; 8] = [
    Point::new(1, 2),
    Point::new(2, 1),
    Point::new(2, -1),
    Point::new(1, -2),
    Point::new(-1, -2),
    Point::new(-2, -1),
    Point::new(-2, 1),
    Point::new(-1, 2),
];

/// Edges of squared length 1 and 2 weigh `(1 + √2)` times their length;
/// knight moves weigh `3 + √2`. No other edges.
#[derive(Clone, Copy, Debug, Default)]
pub struct KnightGraph;

impl KnightGraph {
    pub fn weight(offset: Point) -> Option<Zr2> {
        match offset.norm_sq() {
            1 => Some(Zr2::new(1, 1)),
            2 => Some(Zr2::new(2, 1)),
            5 => Some(Zr2::new(3, 1)),
            _ => None,
        }
    }
}

impl LatticeGraph for KnightGraph {
    fn neighbors(&self, p: Point, out: &mut Vec<(Point, Zr2)>) {
        for d in DIRS.iter().chain(KNIGHT.iter()) {
            out.push((p + *d, KnightGraph::weight(*d).unwrap()));
        }
    }
}

pub fn knight_graph_distance(p: Point, q: Point) -> Zr2 {
    // Every target within squared distance 49 is reached well inside this
    // cutoff; beyond it Dijkstra would never stop on an infinite graph.
    let n = p.dist_sq(q);
    let cutoff = Zr2::DILATION.scale(crate::dilation::isqrt(n) + 2);
    let dist = distances_from(&KnightGraph, p, |d| d <= cutoff);
    dist.get(&q).copied().expect("target reached within the cutoff")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundedEntry {
    pub q: Point,
    pub norm_sq: i64,
    pub distance: Zr2,
    pub holds: bool,
    /// `d_H(0, q) = (1 + √2)|q|` exactly.
    pub tight: bool,
}

impl BoundedEntry {
    /// `(1 + √2)|q| - d_H(0, q)`, approximately. Reporting only.
    pub fn margin_approx(&self) -> f64 {
        Zr2::DILATION.approx() * sqrt_f64(self.norm_sq as f64) - self.distance.approx()
    }
}

fn sqrt_f64(x: f64) -> f64 {
    // Newton iterations; no_std has no f64::sqrt.
    if x <= 0.0 {
        return 0.0;
    }
    let mut r = if x > 1.0 { x } else { 1.0 };
    for _ in 0..64 {
        r = 0.5 * (r + x / r);
    }
    r
}

#[derive(Clone, Debug)]
pub struct BoundedCheck {
    pub entries: Vec<BoundedEntry>,
}

impl BoundedCheck {
    pub fn passed(&self) -> bool {
        self.entries.iter().all(|e| e.holds)
    }
}

/// Checks `d_H(0, q) ≤ (1 + √2)|q|` for every `q` with `0 < |q|² < 50`.
pub fn lemma24_bounded_check() -> BoundedCheck {
    const LIMIT: i64 = 50;
    let cutoff = Zr2::new(8, 8);
    let dist: BTreeMap<Point, Zr2> = distances_from(&KnightGraph, Point::ORIGIN, |d| d <= cutoff);
    let mut entries = Vec::new();
    for x in -8..=8 {
        for y in -8..=8 {
            let q = Point::new(x, y);
            let n = q.norm_sq();
            if n == 0 || n >= LIMIT {
                continue;
            }
            let d = *dist.get(&q).expect("scan region reached");
            let holds = leq_scaled_sqrt(d, Zr2::DILATION, n as u64).unwrap();
            // equality iff d² = (1 + √2)²·n exactly
            let tight = d * d == (Zr2::DILATION * Zr2::DILATION).scale(n);
            entries.push(BoundedEntry { q, norm_sq: n, distance: d, holds, tight });
        }
    }
    BoundedCheck { entries }
}

/// A polynomial in two variables `s`, `t` with `Z[√2]` coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Poly2 {
    terms: BTreeMap<(u32, u32), Zr2>,
}

impl Poly2 {
    pub fn constant(c: Zr2) -> Self {
        Poly2::monomial(c, 0, 0)
    }

    pub fn monomial(c: Zr2, i: u32, j: u32) -> Self {
        let mut p = Poly2::default();
        if c != Zr2::ZERO {
            p.terms.insert((i, j), c);
        }
        p
    }

    pub fn s() -> Self {
        Poly2::monomial(Zr2::ONE, 1, 0)
    }

    pub fn t() -> Self {
        Poly2::monomial(Zr2::ONE, 0, 1)
    }

    /// Coefficient of `s^i t^j`.
    pub fn coeff(&self, i: u32, j: u32) -> Zr2 {
        self.terms.get(&(i, j)).copied().unwrap_or(Zr2::ZERO)
    }

    pub fn terms(&self) -> impl Iterator<Item = ((u32, u32), Zr2)> + '_ {
        self.terms.iter().map(|(k, v)| (*k, *v))
    }

    pub fn add(&self, other: &Poly2) -> Poly2 {
        let mut out = self.clone();
        for (k, v) in &other.terms {
            let e = out.terms.entry(*k).or_insert(Zr2::ZERO);
            *e += *v;
            if *e == Zr2::ZERO {
                out.terms.remove(k);
            }
        }
        out
    }

    pub fn scale(&self, c: Zr2) -> Poly2 {
        let mut out = Poly2::default();
        for (k, v) in &self.terms {
            let w = *v * c;
            if w != Zr2::ZERO {
                out.terms.insert(*k, w);
            }
        }
        out
    }

    pub fn sub(&self, other: &Poly2) -> Poly2 {
        self.add(&other.scale(Zr2::int(-1)))
    }

    pub fn mul(&self, other: &Poly2) -> Poly2 {
        let mut out = Poly2::default();
        for ((i, j), a) in &self.terms {
            for ((k, l), b) in &other.terms {
                out = out.add(&Poly2::monomial(*a * *b, i + k, j + l));
            }
        }
        out
    }

    pub fn eval(&self, s: i64, t: i64) -> Zr2 {
        self.terms.iter().fold(Zr2::ZERO, |acc, ((i, j), c)| {
            acc + c.scale(s.pow(*i) * t.pow(*j))
        })
    }

    /// Every coefficient is nonnegative, so the polynomial is nonnegative on
    /// the closed orthant `s, t ≥ 0`.
    pub fn coefficients_nonnegative(&self) -> bool {
        self.terms.values().all(|c| c.is_nonnegative())
    }
}

#[derive(Clone, Debug)]
pub struct InductionCertificate {
    /// `2√2 - 1`, the knight weight divided by `1 + √2`.
    pub gap: Zr2,
    /// `4x + 2y - 5 - gap²` after substitution; must be nonnegative before
    /// the second squaring.
    pub linear: Poly2,
    /// `linear² - 4·gap²·((x-2)² + (y-1)²)`.
    pub residual: Poly2,
}

impl InductionCertificate {
    /// `(label, coefficient)` in the order 1, s, t, s², st, t².
    pub fn coefficients(&self) -> [(&'static str, Zr2); 6] {
        let r = &self.residual;
        [
            ("1", r.coeff(0, 0)),
            ("s", r.coeff(1, 0)),
            ("t", r.coeff(0, 1)),
            ("s^2", r.coeff(2, 0)),
            ("st", r.coeff(1, 1)),
            ("t^2", r.coeff(0, 2)),
        ]
    }

    pub fn passed(&self) -> bool {
        self.gap.sign() > 0
            && self.linear.coefficients_nonnegative()
            && self.residual.coefficients_nonnegative()
            && self.residual.terms().all(|((i, j), _)| i + j <= 2)
    }
}

/// Certifies `(1+√2)·|(x-2, y-1)| + (3+√2) ≤ (1+√2)·|(x, y)|` on
/// `5 ≤ y ≤ x`.
///
/// Dividing by `1 + √2` leaves `√B - √A ≥ g` with `g = 2√2 - 1`,
/// `A = (x-2)² + (y-1)²` and `B = x² + y²`. Since `g > 0`, this follows from
/// `B - A - g² ≥ 2g√A`, which (once the left side is known nonnegative)
/// follows from `(B - A - g²)² - 4g²A ≥ 0`. Substituting `x = 5 + s + t`,
/// `y = 5 + s` with `s, t ≥ 0` turns both conditions into coefficient sign
/// checks.
pub fn induction_inequality_certificate() -> InductionCertificate {
    let knight = Zr2::new(3, 1);
    let dil = Zr2::DILATION;
    // knight / dil = knight · conj(dil) / norm(dil), and norm(dil) = -1
    let num = knight * dil.conj();
    let norm = dil.norm() as i64;
    assert!(num.a % norm == 0 && num.b % norm == 0);
    let gap = Zr2::new(num.a / norm, num.b / norm);

    let c = |v: i64| Poly2::constant(Zr2::int(v));
    let x = c(5).add(&Poly2::s()).add(&Poly2::t());
    let y = c(5).add(&Poly2::s());
    let xm = x.sub(&c(2));
    let ym = y.sub(&c(1));
    let a = xm.mul(&xm).add(&ym.mul(&ym));
    let b = x.mul(&x).add(&y.mul(&y));
    let linear = b.sub(&a).sub(&Poly2::constant(gap * gap));
    let residual = linear.mul(&linear).sub(&a.scale((gap * gap).scale(4)));
    InductionCertificate { gap, linear, residual }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn knight_distances() {
        assert_eq!(knight_graph_distance(Point::ORIGIN, Point::ORIGIN), Zr2::ZERO);
        assert_eq!(knight_graph_distance(Point::ORIGIN, Point::new(1, 2)), Zr2::new(3, 1));
        assert_eq!(knight_graph_distance(Point::ORIGIN, Point::new(1, 0)), Zr2::new(1, 1));
        assert_eq!(knight_graph_distance(Point::ORIGIN, Point::new(-1, -1)), Zr2::new(2, 1));
    }

    #[test]
    fn bounded_scan_region() {
        let check = lemma24_bounded_check();
        let has = |x, y| check.entries.iter().any(|e| e.q == Point::new(x, y));
        assert!(has(7, 0));
        assert!(!has(7, 1));
        assert!(!has(0, 0));
        let unit = check.entries.iter().find(|e| e.q == Point::new(1, 0)).unwrap();
        assert!(unit.holds && unit.tight);
        let knight = check.entries.iter().find(|e| e.q == Point::new(1, 2)).unwrap();
        assert_eq!(knight.distance, Zr2::new(3, 1));
        assert!(knight.holds && !knight.tight);
    }

    #[test]
    fn linear_part() {
        let cert = induction_inequality_certificate();
        assert_eq!(cert.gap, Zr2::new(-1, 2));
        // 16 + 6s + 4t + 4√2
        assert_eq!(cert.linear.coeff(0, 0), Zr2::new(16, 4));
        assert_eq!(cert.linear.coeff(1, 0), Zr2::int(6));
        assert_eq!(cert.linear.coeff(0, 1), Zr2::int(4));
        assert!(cert.passed());
    }
}

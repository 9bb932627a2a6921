//! Exact lattice-point counting in simple polygons with rational vertices.
//!
//! Interior points are counted by an exact scanline over integer heights:
//! edge crossings are computed as exact rationals with a half-open rule at
//! edge endpoints, and boundary lattice points are enumerated per edge and
//! subtracted. No floating point enters the counts; floats appear only in
//! the perimeter used by the approximation-bound checks.

use std::collections::{BTreeMap, BTreeSet};

use rand::Rng;

use crate::error::Error;
use crate::ratio::Ratio;

/// A point with exact rational coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Point {
    pub x: Ratio,
    pub y: Ratio,
}

impl Point {
    pub fn new(x: Ratio, y: Ratio) -> Point {
        Point { x, y }
    }

    pub fn from_ints(x: i64, y: i64) -> Point {
        Point {
            x: Ratio::from_int(x as i128),
            y: Ratio::from_int(y as i128),
        }
    }
}

fn floor_ratio(r: Ratio) -> i128 {
    r.num().div_euclid(r.den())
}

fn ceil_ratio(r: Ratio) -> i128 {
    -((-r).num().div_euclid(r.den()))
}

/// Sign of the cross product (a - o) x (b - o).
fn orient(o: &Point, a: &Point, b: &Point) -> i32 {
    let lhs = (a.x - o.x) * (b.y - o.y);
    let rhs = (a.y - o.y) * (b.x - o.x);
    match lhs.cmp(&rhs) {
        std::cmp::Ordering::Less => -1,
        std::cmp::Ordering::Equal => 0,
        std::cmp::Ordering::Greater => 1,
    }
}

fn on_segment(p: &Point, q: &Point, probe: &Point) -> bool {
    orient(p, q, probe) == 0
        && probe.x >= p.x.min(q.x)
        && probe.x <= p.x.max(q.x)
        && probe.y >= p.y.min(q.y)
        && probe.y <= p.y.max(q.y)
}

/// Whether closed segments [p1, q1] and [p2, q2] share any point.
fn segments_touch(p1: &Point, q1: &Point, p2: &Point, q2: &Point) -> bool {
    let o1 = orient(p1, q1, p2);
    let o2 = orient(p1, q1, q2);
    let o3 = orient(p2, q2, p1);
    let o4 = orient(p2, q2, q1);
    if o1 != o2 && o3 != o4 && o1 != 0 && o2 != 0 && o3 != 0 && o4 != 0 {
        return true;
    }
    (o1 == 0 && on_segment(p1, q1, p2))
        || (o2 == 0 && on_segment(p1, q1, q2))
        || (o3 == 0 && on_segment(p2, q2, p1))
        || (o4 == 0 && on_segment(p2, q2, q1))
}

/// A simple polygon with rational vertices. Construction validates
/// simplicity exactly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polygon {
    vertices: Vec<Point>,
}

impl Polygon {
    pub fn new(vertices: Vec<Point>) -> Result<Polygon, Error> {
        let m = vertices.len();
        if m < 3 {
            return Err(Error::PolygonInvalid("fewer than 3 vertices"));
        }
        for i in 0..m {
            if vertices[i] == vertices[(i + 1) % m] {
                return Err(Error::PolygonInvalid("zero-length edge"));
            }
        }
        // Adjacent edges may share only their common vertex: reject when one
        // doubles back over the other.
        for i in 0..m {
            let prev = &vertices[i];
            let shared = &vertices[(i + 1) % m];
            let next = &vertices[(i + 2) % m];
            if orient(shared, prev, next) == 0 {
                let dot = (prev.x - shared.x) * (next.x - shared.x)
                    + (prev.y - shared.y) * (next.y - shared.y);
                if dot > Ratio::ZERO {
                    return Err(Error::PolygonInvalid("edges overlap at a vertex"));
                }
            }
        }
        // Non-adjacent edges must not touch at all.
        for i in 0..m {
            for j in i + 1..m {
                if j == i + 1 || (i == 0 && j == m - 1) {
                    continue;
                }
                if segments_touch(
                    &vertices[i],
                    &vertices[(i + 1) % m],
                    &vertices[j],
                    &vertices[(j + 1) % m],
                ) {
                    return Err(Error::PolygonInvalid("self-intersecting"));
                }
            }
        }
        let poly = Polygon { vertices };
        if poly.area().is_zero() {
            return Err(Error::PolygonInvalid("zero area"));
        }
        Ok(poly)
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    /// Exact unsigned area by the shoelace formula.
    pub fn area(&self) -> Ratio {
        let m = self.vertices.len();
        let mut twice = Ratio::ZERO;
        for i in 0..m {
            let p = &self.vertices[i];
            let q = &self.vertices[(i + 1) % m];
            twice += p.x * q.y - q.x * p.y;
        }
        (twice / Ratio::from_int(2)).abs()
    }

    /// Circumference as a float (used only in approximation bounds).
    pub fn perimeter_f64(&self) -> f64 {
        let m = self.vertices.len();
        (0..m)
            .map(|i| {
                let p = &self.vertices[i];
                let q = &self.vertices[(i + 1) % m];
                let dx = (q.x - p.x).to_f64();
                let dy = (q.y - p.y).to_f64();
                (dx * dx + dy * dy).sqrt()
            })
            .sum()
    }

    /// The polygon `v + tP`. Scaling and translating preserve simplicity.
    pub fn scale_translate(&self, t: u64, v: &Point) -> Polygon {
        let t = Ratio::from_int(t as i128);
        Polygon {
            vertices: self
                .vertices
                .iter()
                .map(|p| Point::new(v.x + t * p.x, v.y + t * p.y))
                .collect(),
        }
    }

    pub fn is_lattice(&self) -> bool {
        self.vertices.iter().all(|p| p.x.den() == 1 && p.y.den() == 1)
    }
}

/// Exact counts of lattice points strictly inside and on the boundary of a
/// polygon.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LatticeCount {
    pub interior: u64,
    pub boundary: u64,
}

impl LatticeCount {
    /// `I + B/2 - 1`: equals the area exactly for lattice polygons.
    pub fn pick_area(&self) -> Ratio {
        Ratio::from_int(self.interior as i128) + Ratio::new(self.boundary as i128, 2) - Ratio::ONE
    }
}

/// Lattice points on the closed edge from `p` to `q`, exactly.
fn edge_lattice_points(p: &Point, q: &Point, out: &mut BTreeSet<(i128, i128)>) {
    if p.y != q.y {
        let (lo, hi) = if p.y < q.y { (p, q) } else { (q, p) };
        let dx = q.x - p.x;
        let dy = q.y - p.y;
        for y in ceil_ratio(lo.y)..=floor_ratio(hi.y) {
            let y_r = Ratio::from_int(y);
            let x = p.x + (y_r - p.y) * dx / dy;
            if x.den() == 1 {
                out.insert((x.num(), y));
            }
        }
    } else if p.y.den() == 1 {
        let y = p.y.num();
        let (lo, hi) = if p.x < q.x { (p.x, q.x) } else { (q.x, p.x) };
        for x in ceil_ratio(lo)..=floor_ratio(hi) {
            out.insert((x, y));
        }
    }
}

/// Exact interior and boundary lattice-point counts.
pub fn lattice_points(poly: &Polygon) -> LatticeCount {
    let verts = poly.vertices();
    let m = verts.len();

    let mut boundary = BTreeSet::new();
    for i in 0..m {
        edge_lattice_points(&verts[i], &verts[(i + 1) % m], &mut boundary);
    }
    let mut boundary_by_y: BTreeMap<i128, Vec<i128>> = BTreeMap::new();
    for &(x, y) in &boundary {
        boundary_by_y.entry(y).or_default().push(x);
    }
    for xs in boundary_by_y.values_mut() {
        xs.sort_unstable();
    }

    let y_min = verts.iter().map(|p| p.y).min().unwrap();
    let y_max = verts.iter().map(|p| p.y).max().unwrap();

    let mut interior = 0u64;
    let mut crossings: Vec<Ratio> = Vec::new();
    for y in ceil_ratio(y_min)..=floor_ratio(y_max) {
        let y_r = Ratio::from_int(y);
        crossings.clear();
        for i in 0..m {
            let p = &verts[i];
            let q = &verts[(i + 1) % m];
            if p.y == q.y {
                continue;
            }
            let (lo, hi) = if p.y < q.y { (p, q) } else { (q, p) };
            // Half-open in y: count the crossing at the lower endpoint only.
            if lo.y <= y_r && y_r < hi.y {
                let x = p.x + (y_r - p.y) * (q.x - p.x) / (q.y - p.y);
                crossings.push(x);
            }
        }
        crossings.sort_unstable();
        debug_assert!(crossings.len() % 2 == 0, "odd crossing parity at y={y}");
        let empty = Vec::new();
        let bxs = boundary_by_y.get(&y).unwrap_or(&empty);
        for pair in crossings.chunks_exact(2) {
            let first = floor_ratio(pair[0]) + 1;
            let last = ceil_ratio(pair[1]) - 1;
            if last < first {
                continue;
            }
            interior += (last - first + 1) as u64;
            let lo_idx = bxs.partition_point(|&x| x < first);
            let hi_idx = bxs.partition_point(|&x| x <= last);
            interior -= (hi_idx - lo_idx) as u64;
        }
    }

    LatticeCount {
        interior,
        boundary: boundary.len() as u64,
    }
}

/// Counts for `v + tP`.
pub fn lattice_points_scaled(poly: &Polygon, t: u64, v: &Point) -> LatticeCount {
    lattice_points(&poly.scale_translate(t, v))
}

/// A random simple polygon with `vertices` corners, coordinates `p/q` in
/// `[0, max_coord]` with denominators up to `max_denom`. Points are sorted
/// around their centroid, which yields a star-shaped (hence simple)
/// polygon; ambiguous angular ties are resampled.
pub fn random_simple_polygon(
    rng: &mut impl Rng,
    vertices: usize,
    max_coord: i64,
    max_denom: i64,
) -> Polygon {
    assert!(vertices >= 3);
    'attempt: for _ in 0..10_000 {
        let mut pts: Vec<Point> = Vec::with_capacity(vertices);
        while pts.len() < vertices {
            let den = rng.gen_range(1..=max_denom) as i128;
            let x = Ratio::new(rng.gen_range(0..=max_coord as i128 * den), den);
            let den = rng.gen_range(1..=max_denom) as i128;
            let y = Ratio::new(rng.gen_range(0..=max_coord as i128 * den), den);
            let p = Point::new(x, y);
            if !pts.contains(&p) {
                pts.push(p);
            }
        }
        let inv_m = Ratio::new(1, vertices as i128);
        let cx = pts.iter().fold(Ratio::ZERO, |acc, p| acc + p.x) * inv_m;
        let cy = pts.iter().fold(Ratio::ZERO, |acc, p| acc + p.y) * inv_m;
        let center = Point::new(cx, cy);
        if pts.contains(&center) {
            continue 'attempt;
        }
        let upper = |p: &Point| p.y > center.y || (p.y == center.y && p.x > center.x);
        // Any angular tie through the center makes the star ordering
        // ambiguous; resample rather than break ties.
        for i in 0..pts.len() {
            for j in i + 1..pts.len() {
                if orient(&center, &pts[i], &pts[j]) == 0 {
                    continue 'attempt;
                }
            }
        }
        pts.sort_by(|a, b| match (upper(a), upper(b)) {
            (true, false) => std::cmp::Ordering::Less,
            (false, true) => std::cmp::Ordering::Greater,
            _ => match orient(&center, a, b) {
                1 => std::cmp::Ordering::Less,
                -1 => std::cmp::Ordering::Greater,
                _ => unreachable!("angular ties were resampled"),
            },
        });
        if let Ok(poly) = Polygon::new(pts) {
            return poly;
        }
    }
    panic!("failed to generate a simple polygon");
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn square() -> Polygon {
        Polygon::new(vec![
            Point::from_ints(0, 0),
            Point::from_ints(1, 0),
            Point::from_ints(1, 1),
            Point::from_ints(0, 1),
        ])
        .unwrap()
    }

    #[test]
    fn unit_square_scaled_counts() {
        for t in [1u64, 2, 3, 10, 37] {
            let counts = lattice_points_scaled(&square(), t, &Point::from_ints(0, 0));
            assert_eq!(counts.interior, (t - 1) * (t - 1));
            assert_eq!(counts.boundary, 4 * t);
            assert_eq!(counts.pick_area(), Ratio::from_int((t * t) as i128));
        }
    }

    #[test]
    fn right_triangle_scaled_by_two() {
        // Boundary: (0,0), (1,0), (2,0), (1,1), (0,2), (0,1). No interior
        // point exists (x, y >= 1 forces x + y >= 2), consistent with
        // Pick: I = A - B/2 + 1 = 2 - 3 + 1 = 0.
        let tri = Polygon::new(vec![
            Point::from_ints(0, 0),
            Point::from_ints(1, 0),
            Point::from_ints(0, 1),
        ])
        .unwrap();
        let counts = lattice_points_scaled(&tri, 2, &Point::from_ints(0, 0));
        assert_eq!(counts.interior, 0);
        assert_eq!(counts.boundary, 6);
        assert_eq!(counts.pick_area(), Ratio::from_int(2));
    }

    #[test]
    fn pick_identity_on_random_lattice_polygons() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for _ in 0..60 {
            let m = rng.gen_range(3..=9);
            let poly = random_simple_polygon(&mut rng, m, 12, 1);
            assert!(poly.is_lattice());
            let counts = lattice_points(&poly);
            assert_eq!(counts.pick_area(), poly.area(), "{poly:?}");
        }
    }

    #[test]
    fn approximation_bound_on_rational_polygons() {
        let mut rng = ChaCha8Rng::seed_from_u64(22);
        for _ in 0..20 {
            let m = rng.gen_range(3..=8);
            let poly = random_simple_polygon(&mut rng, m, 10, 4);
            let t = rng.gen_range(10..=50u64);
            let v = Point::new(Ratio::new(rng.gen_range(0..8), 7), Ratio::new(rng.gen_range(0..8), 5));
            let counts = lattice_points_scaled(&poly, t, &v);
            let lhs = (counts.interior as f64 - poly.area().to_f64() * (t * t) as f64).abs();
            let rhs = 3.0 * poly.perimeter_f64() * t as f64 + 5.0 * m as f64;
            assert!(lhs <= rhs, "bound failed: {lhs} > {rhs}");
        }
    }

    #[test]
    fn rejects_degenerate_polygons() {
        assert!(Polygon::new(vec![Point::from_ints(0, 0), Point::from_ints(1, 1)]).is_err());
        // Bowtie.
        assert!(Polygon::new(vec![
            Point::from_ints(0, 0),
            Point::from_ints(2, 2),
            Point::from_ints(2, 0),
            Point::from_ints(0, 2),
        ])
        .is_err());
        // Collinear spike.
        assert!(Polygon::new(vec![
            Point::from_ints(0, 0),
            Point::from_ints(4, 0),
            Point::from_ints(2, 0),
            Point::from_ints(2, 3),
        ])
        .is_err());
    }

    #[test]
    fn fractional_square_has_no_boundary_points() {
        // Square with all vertices at half-integer coordinates, side 2.
        let half = |a: i128| Ratio::new(a, 2);
        let poly = Polygon::new(vec![
            Point::new(half(1), half(1)),
            Point::new(half(5), half(1)),
            Point::new(half(5), half(5)),
            Point::new(half(1), half(5)),
        ])
        .unwrap();
        let counts = lattice_points(&poly);
        assert_eq!(counts.boundary, 0);
        assert_eq!(counts.interior, 4);
    }
}

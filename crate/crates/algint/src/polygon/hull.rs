//! Exact convex hulls of lattice point sets.

/// Lattice point `(i, j)`.
pub type Pt = (i64, i64);

/// Position of a point relative to a convex lattice polygon.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Location {
    Interior,
    Boundary,
    Exterior,
}

fn cross(o: Pt, a: Pt, b: Pt) -> i64 {
    (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
}

pub fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Convex hull with vertices in counter-clockwise order and no collinear
/// vertices. Degenerate inputs give one or two vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hull {
    pub vertices: Vec<Pt>,
}

impl Hull {
    /// Andrew's monotone chain.
    pub fn new(points: &[Pt]) -> Hull {
        let mut pts: Vec<Pt> = points.to_vec();
        pts.sort();
        pts.dedup();
        if pts.len() <= 2 {
            return Hull { vertices: pts };
        }
        let mut lower: Vec<Pt> = Vec::new();
        for &p in &pts {
            while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0 {
                lower.pop();
            }
            lower.push(p);
        }
        let mut upper: Vec<Pt> = Vec::new();
        for &p in pts.iter().rev() {
            while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0 {
                upper.pop();
            }
            upper.push(p);
        }
        lower.pop();
        upper.pop();
        lower.extend(upper);
        Hull { vertices: lower }
    }

    /// Edges `(from, to)` in counter-clockwise order.
    pub fn edges(&self) -> Vec<(Pt, Pt)> {
        let n = self.vertices.len();
        if n < 2 {
            return Vec::new();
        }
        if n == 2 {
            return vec![(self.vertices[0], self.vertices[1]), (self.vertices[1], self.vertices[0])];
        }
        (0..n).map(|k| (self.vertices[k], self.vertices[(k + 1) % n])).collect()
    }

    /// Whether the hull has nonempty interior.
    pub fn is_two_dimensional(&self) -> bool {
        self.vertices.len() >= 3
    }

    pub fn locate(&self, p: Pt) -> Location {
        let n = self.vertices.len();
        match n {
            0 => Location::Exterior,
            1 => {
                if self.vertices[0] == p {
                    Location::Boundary
                } else {
                    Location::Exterior
                }
            }
            2 => {
                let (a, b) = (self.vertices[0], self.vertices[1]);
                let within = p.0 >= a.0.min(b.0) && p.0 <= a.0.max(b.0) && p.1 >= a.1.min(b.1) && p.1 <= a.1.max(b.1);
                if cross(a, b, p) == 0 && within {
                    Location::Boundary
                } else {
                    Location::Exterior
                }
            }
            _ => {
                let mut on_edge = false;
                for (a, b) in self.edges() {
                    let c = cross(a, b, p);
                    if c < 0 {
                        return Location::Exterior;
                    }
                    if c == 0 {
                        on_edge = true;
                    }
                }
                if on_edge {
                    Location::Boundary
                } else {
                    Location::Interior
                }
            }
        }
    }

    /// All lattice points of the closed hull, sorted.
    pub fn lattice_points(&self) -> Vec<Pt> {
        if self.vertices.is_empty() {
            return Vec::new();
        }
        let imin = self.vertices.iter().map(|v| v.0).min().unwrap();
        let imax = self.vertices.iter().map(|v| v.0).max().unwrap();
        let jmin = self.vertices.iter().map(|v| v.1).min().unwrap();
        let jmax = self.vertices.iter().map(|v| v.1).max().unwrap();
        let mut out = Vec::new();
        for i in imin..=imax {
            for j in jmin..=jmax {
                if self.locate((i, j)) != Location::Exterior {
                    out.push((i, j));
                }
            }
        }
        out
    }
}

use crate::error::{Error, Result};

/// Fewest interior nodes allowed along either axis.
pub const MIN_INTERIOR_NODES: usize = 8;

/// Axis-aligned rectangle carrying a uniform grid of spacing `h`.
#[derive(Debug, Clone, PartialEq)]
pub struct RectDomain {
    pub x_range: (f64, f64),
    pub y_range: (f64, f64),
    pub h: f64,
    nx: usize,
    ny: usize,
}

fn cells(range: (f64, f64), h: f64, axis: &str) -> Result<usize> {
    let len = range.1 - range.0;
    if !(len > 0.0) || !len.is_finite() {
        return Err(Error::InvalidDomain(format!("empty {axis} range {range:?}")));
    }
    let n = (len / h).round();
    if !(n >= 1.0) || (n * h - len).abs() > 1e-9 * len {
        return Err(Error::InvalidDomain(format!(
            "h = {h} does not divide the {axis} range {range:?}"
        )));
    }
    if (n as usize) < MIN_INTERIOR_NODES + 1 {
        return Err(Error::InvalidDomain(format!(
            "{} interior nodes along {axis}, need at least {MIN_INTERIOR_NODES}",
            n as usize - 1
        )));
    }
    Ok(n as usize)
}

impl RectDomain {
    pub fn new(x_range: (f64, f64), y_range: (f64, f64), h: f64) -> Result<Self> {
        if !(h > 0.0) || !h.is_finite() {
            return Err(Error::InvalidDomain(format!("grid spacing h = {h}")));
        }
        let nx = cells(x_range, h, "x")? + 1;
        let ny = cells(y_range, h, "y")? + 1;
        Ok(RectDomain {
            x_range,
            y_range,
            h,
            nx,
            ny,
        })
    }

    /// Nodes along x, boundary included.
    pub fn nx(&self) -> usize {
        self.nx
    }

    pub fn ny(&self) -> usize {
        self.ny
    }

    pub fn len(&self) -> usize {
        self.nx * self.ny
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn x(&self, i: usize) -> f64 {
        let (a, b) = self.x_range;
        a + (b - a) * i as f64 / (self.nx - 1) as f64
    }

    pub fn y(&self, j: usize) -> f64 {
        let (a, b) = self.y_range;
        a + (b - a) * j as f64 / (self.ny - 1) as f64
    }

    pub fn index(&self, i: usize, j: usize) -> usize {
        j * self.nx + i
    }

    pub fn is_boundary(&self, i: usize, j: usize) -> bool {
        i == 0 || j == 0 || i == self.nx - 1 || j == self.ny - 1
    }

    /// Interior node with a boundary node among its eight neighbours.
    pub fn is_ring(&self, i: usize, j: usize) -> bool {
        !self.is_boundary(i, j) && (i == 1 || j == 1 || i == self.nx - 2 || j == self.ny - 2)
    }

    /// Euclidean distance from node (i,j) to the rectangle's boundary.
    pub fn distance_to_boundary(&self, i: usize, j: usize) -> f64 {
        let (x, y) = (self.x(i), self.y(j));
        (x - self.x_range.0)
            .min(self.x_range.1 - x)
            .min(y - self.y_range.0)
            .min(self.y_range.1 - y)
            .max(0.0)
    }

    pub fn inradius(&self) -> f64 {
        0.5 * (self.x_range.1 - self.x_range.0).min(self.y_range.1 - self.y_range.0)
    }

    pub fn center(&self) -> (f64, f64) {
        (
            0.5 * (self.x_range.0 + self.x_range.1),
            0.5 * (self.y_range.0 + self.y_range.1),
        )
    }

    /// Boundary nodes in row-major order.
    pub fn boundary_nodes(&self) -> Vec<(usize, usize)> {
        self.nodes().filter(|&(i, j)| self.is_boundary(i, j)).collect()
    }

    pub fn interior_nodes(&self) -> Vec<(usize, usize)> {
        self.nodes().filter(|&(i, j)| !self.is_boundary(i, j)).collect()
    }

    pub fn nodes(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.ny).flat_map(move |j| (0..self.nx).map(move |i| (i, j)))
    }

    /// Interior unknowns per row and in total.
    pub(crate) fn interior_dims(&self) -> (usize, usize) {
        let m = self.nx - 2;
        (m, m * (self.ny - 2))
    }

    /// Row-major interior unknown index of interior node (i,j).
    pub(crate) fn unknown(&self, i: usize, j: usize) -> usize {
        (j - 1) * (self.nx - 2) + (i - 1)
    }
}

/// Node values on a [`RectDomain`] in row-major order (x fastest).
#[derive(Debug, Clone, PartialEq)]
pub struct GridField {
    pub domain: RectDomain,
    pub values: Vec<f64>,
}

impl GridField {
    pub fn from_fn(domain: &RectDomain, f: impl Fn(f64, f64) -> f64) -> Self {
        let values = domain.nodes().map(|(i, j)| f(domain.x(i), domain.y(j))).collect();
        GridField {
            domain: domain.clone(),
            values,
        }
    }

    pub fn constant(domain: &RectDomain, c: f64) -> Self {
        GridField {
            domain: domain.clone(),
            values: vec![c; domain.len()],
        }
    }

    pub fn at(&self, i: usize, j: usize) -> f64 {
        self.values[self.domain.index(i, j)]
    }

    pub fn min(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn max(&self) -> f64 {
        self.values.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn boundary_min(&self) -> f64 {
        self.domain
            .boundary_nodes()
            .into_iter()
            .map(|(i, j)| self.at(i, j))
            .fold(f64::INFINITY, f64::min)
    }

    /// Central-difference gradient at an interior node.
    pub fn gradient(&self, i: usize, j: usize) -> (f64, f64) {
        let h2 = 2.0 * self.domain.h;
        (
            (self.at(i + 1, j) - self.at(i - 1, j)) / h2,
            (self.at(i, j + 1) - self.at(i, j - 1)) / h2,
        )
    }

    /// Largest central-difference |Du| over interior nodes and where it occurs.
    pub fn max_interior_grad(&self) -> (f64, (usize, usize)) {
        let mut best = (0.0, (1, 1));
        for (i, j) in self.domain.interior_nodes() {
            let (p, q) = self.gradient(i, j);
            let g = p.hypot(q);
            if g > best.0 || g.is_nan() {
                best = (g, (i, j));
            }
        }
        best
    }

    /// Largest |Δφ|/h between consecutive boundary nodes along each side.
    pub fn max_boundary_slope(&self) -> f64 {
        let d = &self.domain;
        let (nx, ny) = (d.nx(), d.ny());
        let mut s: f64 = 0.0;
        for i in 0..nx - 1 {
            for j in [0, ny - 1] {
                s = s.max((self.at(i + 1, j) - self.at(i, j)).abs() / d.h);
            }
        }
        for j in 0..ny - 1 {
            for i in [0, nx - 1] {
                s = s.max((self.at(i, j + 1) - self.at(i, j)).abs() / d.h);
            }
        }
        s
    }
}

use std::f64::consts::PI;

use super::mesh::Mesh;
use super::quadrature::QuadratureRule;
use crate::error::{Error, Result};

/// Boundary treatment for finite-element spaces.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Boundary {
    /// Values vanish at both ends.
    Dirichlet,
    /// No constraint.
    Free,
}

/// Which family a table was built from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BasisKind {
    Sine {
        n: usize,
    },
    Hermite {
        order: usize,
        elements: usize,
        boundary: Boundary,
        width: f64,
    },
}

/// Shape of one local basis function on one cell.
#[derive(Debug, Clone, Copy, PartialEq)]
enum Shape {
    Sine { k: usize },
    Value { left: bool },
    // slope dofs are scaled by the nodal length `node_h`
    Slope { left: bool, node_h: f64 },
    Bubble { k: usize },
}

/// Quadrature cell: points, weights and the tabulated jets of the active
/// basis functions.
#[derive(Debug, Clone)]
pub struct Cell {
    pub a: f64,
    pub b: f64,
    pub points: Vec<f64>,
    pub weights: Vec<f64>,
    /// Global indices of the basis functions supported on this cell.
    pub dofs: Vec<usize>,
    shapes: Vec<Shape>,
    // jets[l * npts + q] = [value, first, second derivative]
    jets: Vec<[f64; 3]>,
}

impl Cell {
    #[inline]
    pub fn jet(&self, local: usize, q: usize) -> [f64; 3] {
        self.jets[local * self.points.len() + q]
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// Basis functions tabulated on a composite quadrature grid.
#[derive(Debug, Clone)]
pub struct BasisTable {
    kind: BasisKind,
    a: f64,
    b: f64,
    dim: usize,
    cells: Vec<Cell>,
    positions: Vec<f64>,
    // sine normalization on [a, b]
    length: f64,
}

impl BasisTable {
    pub fn kind(&self) -> BasisKind {
        self.kind
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn interval(&self) -> (f64, f64) {
        (self.a, self.b)
    }

    /// Coordinate used to order degrees of freedom when interleaving spaces.
    pub fn position(&self, dof: usize) -> f64 {
        self.positions[dof]
    }

    /// Largest index distance between two functions sharing a cell.
    pub fn bandwidth(&self) -> usize {
        self.cells
            .iter()
            .map(|c| {
                let lo = c.dofs.iter().min().copied().unwrap_or(0);
                let hi = c.dofs.iter().max().copied().unwrap_or(0);
                hi - lo
            })
            .max()
            .unwrap_or(0)
    }

    /// Jet of basis function `dof` at an arbitrary point.
    pub fn evaluate(&self, dof: usize, x: f64) -> [f64; 3] {
        let ci = match self.cells.binary_search_by(|c| {
            if x < c.a {
                std::cmp::Ordering::Greater
            } else if x > c.b {
                std::cmp::Ordering::Less
            } else {
                std::cmp::Ordering::Equal
            }
        }) {
            Ok(i) => i,
            Err(_) => return [0.0; 3],
        };
        let cell = &self.cells[ci];
        match cell.dofs.iter().position(|d| *d == dof) {
            Some(l) => shape_jet(cell.shapes[l], cell.a, cell.b, self.a, self.length, x),
            None => [0.0; 3],
        }
    }

    /// Jet of the expansion `sum c_k phi_k` at `x`.
    pub fn evaluate_combination(&self, coeffs: &[f64], x: f64) -> [f64; 3] {
        let mut out = [0.0; 3];
        for (k, c) in coeffs.iter().enumerate() {
            let j = self.evaluate(k, x);
            for t in 0..3 {
                out[t] += c * j[t];
            }
        }
        out
    }
}

fn shape_jet(shape: Shape, a: f64, b: f64, origin: f64, length: f64, x: f64) -> [f64; 3] {
    match shape {
        Shape::Sine { k } => {
            let w = k as f64 * PI / length;
            let s = (2.0 / length).sqrt();
            let arg = w * (x - origin);
            let (sn, cs) = arg.sin_cos();
            [s * sn, s * w * cs, -s * w * w * sn]
        }
        _ => {
            let h = b - a;
            let t = (x - a) / h;
            hermite_jet(shape, t, h)
        }
    }
}

fn hermite_jet(shape: Shape, t: f64, h: f64) -> [f64; 3] {
    let h2 = h * h;
    match shape {
        Shape::Value { left: true } => [
            1.0 - 3.0 * t * t + 2.0 * t * t * t,
            (-6.0 * t + 6.0 * t * t) / h,
            (-6.0 + 12.0 * t) / h2,
        ],
        Shape::Value { left: false } => [
            3.0 * t * t - 2.0 * t * t * t,
            (6.0 * t - 6.0 * t * t) / h,
            (6.0 - 12.0 * t) / h2,
        ],
        Shape::Slope { left: true, node_h } => [
            h / node_h * (t - 2.0 * t * t + t * t * t),
            (1.0 - 4.0 * t + 3.0 * t * t) / node_h,
            (-4.0 + 6.0 * t) / (node_h * h),
        ],
        Shape::Slope {
            left: false,
            node_h,
        } => [
            h / node_h * (-t * t + t * t * t),
            (-2.0 * t + 3.0 * t * t) / node_h,
            (-2.0 + 6.0 * t) / (node_h * h),
        ],
        Shape::Bubble { k } => {
            // b = 16 t^2 (1-t)^2, optionally times 4 (2t - 1)
            let b0 = 16.0 * t * t * (1.0 - t) * (1.0 - t);
            let b1 = 32.0 * t * (1.0 - t) * (1.0 - 2.0 * t);
            let b2 = 32.0 * (1.0 - 6.0 * t + 6.0 * t * t);
            if k == 0 {
                [b0, b1 / h, b2 / h2]
            } else {
                let m = 4.0 * (2.0 * t - 1.0);
                [b0 * m, (b1 * m + 8.0 * b0) / h, (b2 * m + 16.0 * b1) / h2]
            }
        }
        Shape::Sine { .. } => unreachable!("sine shapes are handled by the caller"),
    }
}

fn tabulate(cell: &mut Cell, origin: f64, length: f64) {
    let npts = cell.points.len();
    cell.jets = Vec::with_capacity(cell.shapes.len() * npts);
    for s in &cell.shapes {
        for &x in &cell.points {
            cell.jets
                .push(shape_jet(*s, cell.a, cell.b, origin, length, x));
        }
    }
}

fn cell_points(a: f64, b: f64, rule: &QuadratureRule) -> (Vec<f64>, Vec<f64>) {
    let h = b - a;
    (
        rule.points.iter().map(|t| a + h * t).collect(),
        rule.weights.iter().map(|w| w * h).collect(),
    )
}

/// `sqrt(2/L) sin(k pi (x-a)/L)`, `k = 1..=n`, tabulated on `subintervals`
/// equal pieces of `[a, b]`, each carrying a copy of `rule`.
pub fn sine_basis_on(
    a: f64,
    b: f64,
    n: usize,
    rule: &QuadratureRule,
    subintervals: usize,
) -> Result<BasisTable> {
    if n == 0 || subintervals == 0 || !(b > a) {
        return Err(Error::InvalidArgument(
            "sine basis needs n > 0, at least one subinterval and b > a".into(),
        ));
    }
    let length = b - a;
    let mesh = Mesh::uniform(a, b, subintervals)?;
    let shapes: Vec<Shape> = (1..=n).map(|k| Shape::Sine { k }).collect();
    let cells = mesh
        .nodes()
        .windows(2)
        .map(|w| {
            let (points, weights) = cell_points(w[0], w[1], rule);
            let mut cell = Cell {
                a: w[0],
                b: w[1],
                points,
                weights,
                dofs: (0..n).collect(),
                shapes: shapes.clone(),
                jets: Vec::new(),
            };
            tabulate(&mut cell, a, length);
            cell
        })
        .collect();
    Ok(BasisTable {
        kind: BasisKind::Sine { n },
        a,
        b,
        dim: n,
        cells,
        positions: vec![0.5 * (a + b); n],
        length,
    })
}

/// Sine basis on `[0, 1]`.
pub fn sine_basis(n: usize, rule: &QuadratureRule, subintervals: usize) -> Result<BasisTable> {
    sine_basis_on(0.0, 1.0, n, rule, subintervals)
}

/// Default number of quadrature subintervals for an `n`-term sine basis.
pub fn default_sine_subintervals(n: usize) -> usize {
    (4 * n).max(64)
}

/// C1 piecewise polynomials of degree `order` (3, 4 or 5): cubic Hermite
/// functions plus `order - 3` interior bubbles per element.
pub fn hermite_basis(
    mesh: &Mesh,
    order: usize,
    rule: &QuadratureRule,
    boundary: Boundary,
) -> Result<BasisTable> {
    if !(3..=5).contains(&order) {
        return Err(Error::UnsupportedOrder(order));
    }
    let nodes = mesh.nodes();
    let ne = mesh.elements();
    let bubbles = order - 3;
    let dirichlet = boundary == Boundary::Dirichlet;

    // number dofs node by node, bubbles right after their element's left node
    let mut value_dof = vec![None; ne + 1];
    let mut slope_dof = vec![0usize; ne + 1];
    let mut bubble_dof = vec![Vec::new(); ne];
    let mut positions = Vec::new();
    let mut next = 0usize;
    for i in 0..=ne {
        let boundary_node = i == 0 || i == ne;
        if !(dirichlet && boundary_node) {
            value_dof[i] = Some(next);
            positions.push(nodes[i]);
            next += 1;
        }
        slope_dof[i] = next;
        positions.push(nodes[i]);
        next += 1;
        if i < ne {
            for _ in 0..bubbles {
                bubble_dof[i].push(next);
                positions.push(0.5 * (nodes[i] + nodes[i + 1]));
                next += 1;
            }
        }
    }
    let node_h: Vec<f64> = (0..=ne)
        .map(|i| {
            let left = if i > 0 { nodes[i] - nodes[i - 1] } else { 0.0 };
            let right = if i < ne { nodes[i + 1] - nodes[i] } else { 0.0 };
            if i == 0 {
                right
            } else if i == ne {
                left
            } else {
                0.5 * (left + right)
            }
        })
        .collect();

    let mut cells = Vec::with_capacity(ne);
    for e in 0..ne {
        let (a, b) = (nodes[e], nodes[e + 1]);
        let mut dofs = Vec::with_capacity(order + 1);
        let mut shapes = Vec::with_capacity(order + 1);
        if let Some(d) = value_dof[e] {
            dofs.push(d);
            shapes.push(Shape::Value { left: true });
        }
        dofs.push(slope_dof[e]);
        shapes.push(Shape::Slope {
            left: true,
            node_h: node_h[e],
        });
        for (k, d) in bubble_dof[e].iter().enumerate() {
            dofs.push(*d);
            shapes.push(Shape::Bubble { k });
        }
        if let Some(d) = value_dof[e + 1] {
            dofs.push(d);
            shapes.push(Shape::Value { left: false });
        }
        dofs.push(slope_dof[e + 1]);
        shapes.push(Shape::Slope {
            left: false,
            node_h: node_h[e + 1],
        });
        let (points, weights) = cell_points(a, b, rule);
        let mut cell = Cell {
            a,
            b,
            points,
            weights,
            dofs,
            shapes,
            jets: Vec::new(),
        };
        tabulate(&mut cell, a, 1.0);
        cells.push(cell);
    }
    Ok(BasisTable {
        kind: BasisKind::Hermite {
            order,
            elements: ne,
            boundary,
            width: mesh.width(),
        },
        a: mesh.start(),
        b: mesh.end(),
        dim: next,
        cells,
        positions,
        length: mesh.end() - mesh.start(),
    })
}

/// Number of quadrature points per element used for order-`r` elements.
pub fn hermite_quadrature_points(order: usize) -> usize {
    2 * order + 4
}

#[cfg(test)]
mod tests {
    use super::super::quadrature::gauss_legendre;
    use super::*;

    #[test]
    fn hermite_dimension_formula() {
        for order in 3..=5 {
            for ne in [1, 2, 7] {
                let mesh = Mesh::uniform(0.0, 1.0, ne).unwrap();
                let rule = gauss_legendre(hermite_quadrature_points(order)).unwrap();
                let d = hermite_basis(&mesh, order, &rule, Boundary::Dirichlet).unwrap();
                assert_eq!(d.dim(), 2 * (ne - 1) + 2 + (order - 3) * ne);
                let f = hermite_basis(&mesh, order, &rule, Boundary::Free).unwrap();
                assert_eq!(f.dim(), d.dim() + 2);
                if ne >= 3 {
                    assert_eq!(d.bandwidth(), order);
                }
            }
        }
        let mesh = Mesh::uniform(0.0, 1.0, 4).unwrap();
        let rule = gauss_legendre(8).unwrap();
        assert!(matches!(
            hermite_basis(&mesh, 6, &rule, Boundary::Dirichlet),
            Err(Error::UnsupportedOrder(6))
        ));
    }

    #[test]
    fn hermite_functions_are_c1_and_vanish_at_dirichlet_ends() {
        let mesh = Mesh::from_nodes(vec![0.0, 0.2, 0.45, 0.7, 1.0]).unwrap();
        let rule = gauss_legendre(10).unwrap();
        let basis = hermite_basis(&mesh, 5, &rule, Boundary::Dirichlet).unwrap();
        for dof in 0..basis.dim() {
            for &x in &mesh.nodes()[1..4] {
                let l = basis.evaluate(dof, x - 1e-12);
                let r = basis.evaluate(dof, x + 1e-12);
                assert!((l[0] - r[0]).abs() < 1e-9, "value jump dof {dof} at {x}");
                assert!((l[1] - r[1]).abs() < 1e-7, "slope jump dof {dof} at {x}");
            }
            assert!(basis.evaluate(dof, 0.0)[0].abs() < 1e-15);
            assert!(basis.evaluate(dof, 1.0)[0].abs() < 1e-15);
        }
    }

    #[test]
    fn hermite_derivatives_match_finite_differences() {
        let mesh = Mesh::uniform(0.0, 2.0, 3).unwrap();
        let rule = gauss_legendre(4).unwrap();
        let basis = hermite_basis(&mesh, 5, &rule, Boundary::Free).unwrap();
        let eps = 1e-6;
        for dof in 0..basis.dim() {
            for &x in &[0.3, 0.9, 1.6] {
                let j = basis.evaluate(dof, x);
                let jp = basis.evaluate(dof, x + eps);
                let jm = basis.evaluate(dof, x - eps);
                assert!((j[1] - (jp[0] - jm[0]) / (2.0 * eps)).abs() < 1e-6);
                assert!((j[2] - (jp[1] - jm[1]) / (2.0 * eps)).abs() < 1e-5);
            }
        }
    }

    #[test]
    fn sine_table_is_orthonormal() {
        let rule = gauss_legendre(8).unwrap();
        let n = 9;
        let basis = sine_basis(n, &rule, default_sine_subintervals(n)).unwrap();
        let mut g = vec![0.0; n * n];
        for cell in basis.cells() {
            for q in 0..cell.len() {
                for i in 0..n {
                    for j in 0..n {
                        g[i * n + j] += cell.weights[q] * cell.jet(i, q)[0] * cell.jet(j, q)[0];
                    }
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((g[i * n + j] - want).abs() < 1e-14);
            }
        }
    }
}

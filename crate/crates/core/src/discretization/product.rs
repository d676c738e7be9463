use super::basis::BasisTable;
use crate::error::{Error, Result};

/// Cartesian product of scalar spaces sharing one quadrature grid.
///
/// Global indices interleave the components by position so that the banded
/// structure of finite-element spaces survives.
#[derive(Debug, Clone)]
pub struct ProductBasis<'a> {
    components: Vec<&'a BasisTable>,
    // global[c][local] = global index
    global: Vec<Vec<usize>>,
    dim: usize,
    bandwidth: usize,
}

impl<'a> ProductBasis<'a> {
    pub fn new(components: Vec<&'a BasisTable>) -> Result<Self> {
        let first = components
            .first()
            .ok_or_else(|| Error::InvalidArgument("product of zero spaces".into()))?;
        for other in &components[1..] {
            if other.cells().len() != first.cells().len() {
                return Err(Error::IncompatibleBases);
            }
            for (c0, c1) in first.cells().iter().zip(other.cells()) {
                if c0.points.len() != c1.points.len()
                    || c0
                        .points
                        .iter()
                        .zip(&c1.points)
                        .any(|(x, y)| (x - y).abs() > 1e-14 * (1.0 + x.abs()))
                {
                    return Err(Error::IncompatibleBases);
                }
            }
        }
        let mut keys: Vec<(f64, usize, usize)> = Vec::new();
        for (c, b) in components.iter().enumerate() {
            for l in 0..b.dim() {
                keys.push((b.position(l), c, l));
            }
        }
        keys.sort_by(|x, y| x.0.total_cmp(&y.0).then(x.1.cmp(&y.1)).then(x.2.cmp(&y.2)));
        let mut global: Vec<Vec<usize>> = components.iter().map(|b| vec![0; b.dim()]).collect();
        for (g, (_, c, l)) in keys.iter().enumerate() {
            global[*c][*l] = g;
        }
        let dim = keys.len();
        let mut bandwidth = 0;
        for ci in 0..first.cells().len() {
            let mut lo = usize::MAX;
            let mut hi = 0;
            for (c, b) in components.iter().enumerate() {
                for d in &b.cells()[ci].dofs {
                    let g = global[c][*d];
                    lo = lo.min(g);
                    hi = hi.max(g);
                }
            }
            if lo <= hi {
                bandwidth = bandwidth.max(hi - lo);
            }
        }
        Ok(Self {
            components,
            global,
            dim,
            bandwidth,
        })
    }

    pub fn single(basis: &'a BasisTable) -> Self {
        Self::new(vec![basis]).expect("a single space is always compatible")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn bandwidth(&self) -> usize {
        self.bandwidth
    }

    pub fn n_components(&self) -> usize {
        self.components.len()
    }

    pub fn component(&self, c: usize) -> &'a BasisTable {
        self.components[c]
    }

    #[inline]
    pub fn global_index(&self, component: usize, local: usize) -> usize {
        self.global[component][local]
    }

    pub fn n_cells(&self) -> usize {
        self.components[0].cells().len()
    }
}

#[cfg(test)]
mod tests {
    use super::super::basis::{hermite_basis, sine_basis, Boundary};
    use super::super::mesh::Mesh;
    use super::super::quadrature::gauss_legendre;
    use super::*;

    #[test]
    fn interleaving_keeps_band_narrow() {
        let mesh = Mesh::uniform(0.0, 1.0, 20).unwrap();
        let rule = gauss_legendre(10).unwrap();
        let u = hermite_basis(&mesh, 3, &rule, Boundary::Dirichlet).unwrap();
        let y = hermite_basis(&mesh, 3, &rule, Boundary::Free).unwrap();
        let p = ProductBasis::new(vec![&u, &y, &y]).unwrap();
        assert_eq!(p.dim(), u.dim() + 2 * y.dim());
        assert!(p.bandwidth() <= 3 * 4, "bandwidth {}", p.bandwidth());
        let mut seen = vec![false; p.dim()];
        for c in 0..3 {
            for l in 0..p.component(c).dim() {
                let g = p.global_index(c, l);
                assert!(!seen[g]);
                seen[g] = true;
            }
        }
        assert!(seen.iter().all(|s| *s));
    }

    #[test]
    fn mismatched_grids_rejected() {
        let rule = gauss_legendre(8).unwrap();
        let a = sine_basis(4, &rule, 64).unwrap();
        let b = sine_basis(4, &rule, 65).unwrap();
        assert!(matches!(
            ProductBasis::new(vec![&a, &b]),
            Err(Error::IncompatibleBases)
        ));
    }
}

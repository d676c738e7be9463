use crate::error::{Error, Result};

/// Strictly increasing partition of an interval.
#[derive(Debug, Clone, PartialEq)]
pub struct Mesh {
    nodes: Vec<f64>,
}

impl Mesh {
    pub fn uniform(a: f64, b: f64, elements: usize) -> Result<Self> {
        if elements == 0 || !(b > a) {
            return Err(Error::InvalidArgument(format!(
                "uniform mesh needs b > a and at least one element (got [{a}, {b}], {elements})"
            )));
        }
        let h = (b - a) / elements as f64;
        let mut nodes: Vec<f64> = (0..=elements).map(|i| a + h * i as f64).collect();
        nodes[elements] = b;
        Ok(Self { nodes })
    }

    pub fn from_nodes(nodes: Vec<f64>) -> Result<Self> {
        if nodes.len() < 2 || nodes.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::InvalidArgument(
                "mesh nodes must be strictly increasing with at least two nodes".into(),
            ));
        }
        Ok(Self { nodes })
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn elements(&self) -> usize {
        self.nodes.len() - 1
    }

    pub fn start(&self) -> f64 {
        self.nodes[0]
    }

    pub fn end(&self) -> f64 {
        self.nodes[self.nodes.len() - 1]
    }

    /// Largest element length.
    pub fn width(&self) -> f64 {
        self.nodes
            .windows(2)
            .map(|w| w[1] - w[0])
            .fold(0.0, f64::max)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn uniform_mesh() {
        let m = Mesh::uniform(0.0, 1.0, 8).unwrap();
        assert_eq!(m.elements(), 8);
        assert!((m.width() - 0.125).abs() < 1e-15);
        assert_eq!(m.end(), 1.0);
        assert!(Mesh::from_nodes(vec![0.0, 0.5, 0.5]).is_err());
        assert!(Mesh::uniform(1.0, 0.0, 3).is_err());
    }
}

//! Degree-of-freedom ordering shared by both element types.
//!
//! For `n` nodes the extended vector has `n + 6` entries:
//! `[w_1 .. w_n, w'_1, w'_n, w''_1, w''_n, w'''_1, w'''_n]`.
//! Derivative DOFs are taken with respect to the reference coordinate
//! `xi in [-1, 1]`; physical derivatives carry a factor `(2/L)^k`.

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum End {
    Left,
    Right,
}

/// Kinematic quantity at a beam end, by derivative order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Quantity {
    Deflection,
    Slope,
    Curvature,
    ThirdDerivative,
}

impl Quantity {
    pub const ALL: [Quantity; 4] = [
        Quantity::Deflection,
        Quantity::Slope,
        Quantity::Curvature,
        Quantity::ThirdDerivative,
    ];

    pub fn order(self) -> usize {
        self as usize
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DofLayout {
    nodes: usize,
}

impl DofLayout {
    pub fn new(nodes: usize) -> Self {
        Self { nodes }
    }

    pub fn nodes(&self) -> usize {
        self.nodes
    }

    pub fn len(&self) -> usize {
        self.nodes + 6
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Index of an end quantity in the extended vector.
    pub fn index(&self, end: End, q: Quantity) -> usize {
        let side = match end {
            End::Left => 0,
            End::Right => 1,
        };
        match q {
            Quantity::Deflection => side * (self.nodes - 1),
            _ => self.nodes + 2 * (q.order() - 1) + side,
        }
    }

    /// Inverse of [`index`](Self::index) for boundary entries.
    pub fn end_quantity(&self, index: usize) -> Option<(End, Quantity)> {
        let n = self.nodes;
        if index == 0 {
            return Some((End::Left, Quantity::Deflection));
        }
        if index == n - 1 {
            return Some((End::Right, Quantity::Deflection));
        }
        if index < n || index >= n + 6 {
            return None;
        }
        let k = index - n;
        let end = if k.is_multiple_of(2) {
            End::Left
        } else {
            End::Right
        };
        Some((end, Quantity::ALL[k / 2 + 1]))
    }

    /// Displacement DOFs carry mass; the appended derivative DOFs do not.
    pub fn is_nodal(&self, index: usize) -> bool {
        index < self.nodes
    }

    pub fn label(&self, index: usize) -> String {
        match self.end_quantity(index) {
            Some((end, q)) if q != Quantity::Deflection => {
                let primes = "'".repeat(q.order());
                let node = if end == End::Left { 1 } else { self.nodes };
                format!("w{primes}_{node}")
            }
            _ => format!("w_{}", index + 1),
        }
    }
}

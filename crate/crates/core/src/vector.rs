//! Small dense vector helpers over `f64` slices.

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

/// Returns `None` for a zero (or non-finite) vector.
pub fn normalized(a: &[f64]) -> Option<Vec<f64>> {
    let n = norm(a);
    if n > 0.0 && n.is_finite() {
        Some(a.iter().map(|x| x / n).collect())
    } else {
        None
    }
}

/// Cosine distance `1 - cos(a, b)`, in `[0, 2]`. `None` if either vector is zero.
pub fn cosine_distance(a: &[f64], b: &[f64]) -> Option<f64> {
    let denom = norm(a) * norm(b);
    if denom > 0.0 {
        Some(1.0 - dot(a, b) / denom)
    } else {
        None
    }
}

pub fn sub(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// Accumulates a running sum of equal-length vectors.
#[derive(Debug, Clone)]
pub struct Accumulator {
    sum: Vec<f64>,
    count: usize,
}

impl Accumulator {
    pub fn new(dim: usize) -> Self {
        Accumulator {
            sum: vec![0.0; dim],
            count: 0,
        }
    }

    pub fn add(&mut self, v: &[f64]) {
        for (s, x) in self.sum.iter_mut().zip(v) {
            *s += x;
        }
        self.count += 1;
    }

    pub fn count(&self) -> usize {
        self.count
    }

    /// Arithmetic mean, or `None` if nothing was added.
    pub fn mean(&self) -> Option<Vec<f64>> {
        if self.count == 0 {
            return None;
        }
        let n = self.count as f64;
        Some(self.sum.iter().map(|s| s / n).collect())
    }
}

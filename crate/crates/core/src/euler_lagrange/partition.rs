use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::Sign;
use crate::error::{Error, Result};
use crate::fourier::{sign_pattern, FourierSeries};

/// Sign-changing zeros `a₀ < … < a_n = a₀ + 2π` with alternating signs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "PartitionWire")]
pub struct NodalPartition {
    endpoints: Vec<f64>,
    first_sign: Sign,
}

#[derive(Deserialize)]
struct PartitionWire {
    endpoints: Vec<f64>,
    first_sign: Sign,
}

impl TryFrom<PartitionWire> for NodalPartition {
    type Error = Error;
    fn try_from(w: PartitionWire) -> Result<Self> {
        NodalPartition::new(w.endpoints, w.first_sign)
    }
}

impl NodalPartition {
    pub fn new(endpoints: Vec<f64>, first_sign: Sign) -> Result<Self> {
        let n = endpoints.len().saturating_sub(1);
        if n < 2 || n % 2 != 0 {
            return Err(Error::Degenerate(format!("need an even number ≥ 2 of nodal intervals, got {n}")));
        }
        if endpoints.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::InvalidInput("endpoints must be strictly increasing".into()));
        }
        let span = endpoints[n] - endpoints[0];
        if (span - 2.0 * PI).abs() > 1e-9 {
            return Err(Error::InvalidInput(format!("endpoints span {span}, expected 2π")));
        }
        Ok(NodalPartition { endpoints, first_sign })
    }

    pub fn endpoints(&self) -> &[f64] {
        &self.endpoints
    }

    pub fn first_sign(&self) -> Sign {
        self.first_sign
    }

    pub fn count(&self) -> usize {
        self.endpoints.len() - 1
    }

    pub fn lengths(&self) -> Vec<f64> {
        self.endpoints.windows(2).map(|w| w[1] - w[0]).collect()
    }

    pub fn sign(&self, i: usize) -> Sign {
        if i % 2 == 0 {
            self.first_sign
        } else {
            self.first_sign.flip()
        }
    }

    pub fn interval(&self, i: usize) -> (f64, f64) {
        (self.endpoints[i], self.endpoints[i + 1])
    }

    /// `(ℓ₊, ℓ₋)`.
    pub fn measures(&self) -> (f64, f64) {
        self.lengths().iter().enumerate().fold((0.0, 0.0), |(p, n), (i, l)| match self.sign(i) {
            Sign::Positive => (p + l, n),
            Sign::Negative => (p, n + l),
        })
    }

    /// Same partition relabelled to start at the first interval of the given sign.
    pub fn starting_with(&self, sign: Sign) -> Self {
        if self.first_sign == sign {
            return self.clone();
        }
        let mut endpoints: Vec<f64> = self.endpoints[1..].to_vec();
        endpoints.push(self.endpoints[1] + 2.0 * PI);
        NodalPartition { endpoints, first_sign: sign }
    }
}

/// Nodal domains of `u`; zeros where `u` touches without changing sign are ignored.
pub fn nodal_partition(u: &FourierSeries, grid_size: usize) -> Result<NodalPartition> {
    let pattern = sign_pattern(u, grid_size)?;
    if pattern.zeros.len() < 2 {
        return Err(Error::Degenerate(format!("{} sign change(s); need at least 2", pattern.zeros.len())));
    }
    let mut endpoints = pattern.zeros.clone();
    endpoints.push(pattern.zeros[0] + 2.0 * PI);
    NodalPartition::new(endpoints, Sign::from_f64(pattern.signs[0]))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cos2_partition() {
        let u = FourierSeries::zeros(2).with_mode(2, 1.0, 0.0);
        let p = nodal_partition(&u, 2048).unwrap();
        assert_eq!(p.count(), 4);
        assert!(p.lengths().iter().all(|l| (l - PI / 2.0).abs() < 1e-14));
        assert_eq!(p.first_sign(), Sign::Negative);
        let q = p.starting_with(Sign::Positive);
        assert_eq!(q.first_sign(), Sign::Positive);
        assert!((q.endpoints()[0] + PI / 4.0).abs() < 1e-14);
        let (lp, ln) = q.measures();
        assert!((lp - PI).abs() < 1e-13 && (ln - PI).abs() < 1e-13);
    }

    #[test]
    fn no_sign_change_is_degenerate() {
        let u = FourierSeries::zeros(2).with_mode(0, 2.0, 0.0).with_mode(2, 1.0, 0.0);
        assert!(matches!(nodal_partition(&u, 256), Err(Error::Degenerate(_))));
    }

    #[test]
    fn json_shape() {
        let p = NodalPartition::new(vec![0.0, 1.0, 3.0, 4.0, 2.0 * PI], Sign::Positive).unwrap();
        let s = serde_json::to_string(&p).unwrap();
        assert!(s.contains("\"first_sign\":1"), "{s}");
        let back: NodalPartition = serde_json::from_str(&s).unwrap();
        assert_eq!(back, p);
        assert!(serde_json::from_str::<NodalPartition>(r#"{"endpoints":[0,1,2],"first_sign":1}"#).is_err());
    }
}

use serde::{Deserialize, Serialize};

use super::ChannelError;

/// Diversity–multiplexing tradeoff curves for four transmit antennas and one
/// receive antenna.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DmtFamily {
    /// Cyclotomic and DAST lattices: `4(1 − 4r)` for `r ≤ 1/4`.
    L1Like,
    /// Quaternionic lattices: `4(1 − 2r)` for `r ≤ 1/2`.
    L2Like,
    /// `4(1 − r)` for `r ≤ 1`.
    Optimal,
}

impl DmtFamily {
    pub fn max_gain(self) -> f64 {
        match self {
            DmtFamily::L1Like => 0.25,
            DmtFamily::L2Like => 0.5,
            DmtFamily::Optimal => 1.0,
        }
    }

    fn slope(self) -> f64 {
        1.0 / self.max_gain()
    }
}

impl std::str::FromStr for DmtFamily {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "l1-like" | "l1" | "dast" => Ok(DmtFamily::L1Like),
            "l2-like" | "l2" | "quaternionic" => Ok(DmtFamily::L2Like),
            "optimal" => Ok(DmtFamily::Optimal),
            _ => Err(format!("unknown family `{s}`; valid families are l1-like, l2-like, optimal")),
        }
    }
}

pub fn dmt_bound(family: DmtFamily, r: f64) -> Result<f64, ChannelError> {
    let max = family.max_gain();
    if !(0.0..=max).contains(&r) {
        return Err(ChannelError::OutOfRange { r, max });
    }
    Ok(4.0 * (1.0 - family.slope() * r))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn endpoints() {
        assert_eq!(dmt_bound(DmtFamily::L1Like, 0.0).unwrap(), 4.0);
        assert_eq!(dmt_bound(DmtFamily::L2Like, 0.25).unwrap(), 2.0);
        assert_eq!(dmt_bound(DmtFamily::Optimal, 1.0).unwrap(), 0.0);
        assert_eq!(dmt_bound(DmtFamily::L1Like, 0.25).unwrap(), 0.0);
    }

    #[test]
    fn out_of_range() {
        assert!(dmt_bound(DmtFamily::L1Like, 0.3).is_err());
        assert!(dmt_bound(DmtFamily::L2Like, -0.1).is_err());
        assert!(dmt_bound(DmtFamily::Optimal, f64::NAN).is_err());
    }
}

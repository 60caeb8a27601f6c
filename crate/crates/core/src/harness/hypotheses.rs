//! Smallest orders at which each extremal statement is claimed.
//!
//! Every function returns the least integer `n` satisfying the displayed
//! bound. [`layout_min_order`] is the separate requirement that the block
//! layout of `F` exists at all; [`at_least_layout`] combines the two.

use serde::{Deserialize, Serialize};

/// `n ≥ (4a + 2b + ab + (b+2)k)/2 + 1`: the spectral radius of every family
/// member lies strictly between `n − b − 2` and `n − b − 1`.
pub fn bracket_min_order(a: usize, b: usize, k: usize) -> usize {
    (4 * a + 2 * b + a * b + (b + 2) * k).div_ceil(2) + 1
}

/// `n ≥ (4a + 2b + ab + (b+2)k)/2 + 2`: `F` maximizes the spectral radius
/// over its family.
pub fn maximality_min_order(a: usize, b: usize, k: usize) -> usize {
    bracket_min_order(a, b, k) + 1
}

/// `n ≥ 4a + 5b/2 + 4k + 7`: the edge-count condition forces criticality.
pub fn edge_condition_min_order(a: usize, b: usize, k: usize) -> usize {
    4 * a + (5 * b).div_ceil(2) + 4 * k + 7
}

/// `n ≥ 2(b+a+k+2)(b+k+2)`: the spectral conditions for integral and
/// fractional `(a,b,k)`-criticality.
pub fn spectral_min_order(a: usize, b: usize, k: usize) -> usize {
    2 * (b + a + k + 2) * (b + k + 2)
}

/// `n ≥ 2(2r+k+2)(r+k+2)`: the spectral condition for fractional and
/// (conjecturally) integral `(r,k)`-criticality. Equals `4(r+1)(r+2)` at `k = 0`.
pub fn regular_min_order(r: usize, k: usize) -> usize {
    2 * (2 * r + k + 2) * (r + k + 2)
}

/// Least `n` for which `F_n^{a,b,k}` can be built: `n ≥ a+b+k+2` and the
/// clique block has room for the `a − 1` attachment endpoints.
pub fn layout_min_order(a: usize, b: usize, k: usize) -> usize {
    (a + b + k + 2).max(2 * a + b + k)
}

pub fn at_least_layout(n: usize, a: usize, b: usize, k: usize) -> usize {
    n.max(layout_min_order(a, b, k))
}

/// Extremal statements whose sharpness is witnessed by `F`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SharpnessTarget {
    /// `λ(G) ≥ λ(F)` forces `(a,b,k)`-critical unless `G ≅ F`; `b > a`.
    Spectral,
    /// `e(G) ≥ C(n−b−1,2) + ab + 2a + (b+1)k` forces `(a,b,k)`-critical; `b > a`.
    EdgeCount,
    /// `λ(G) ≥ λ(F)` forces fractional `(a,b,k)`-critical unless `G ≅ F`; `b > a`.
    Fractional,
    /// `λ(G) ≥ λ(F_n^{r,k})` forces fractional `(r,k)`-critical unless `G ≅ F`.
    FractionalRegular,
    /// As [`SharpnessTarget::Fractional`] but allowing `b = a`.
    FractionalWide,
}

impl SharpnessTarget {
    pub const ALL: [SharpnessTarget; 5] = [
        SharpnessTarget::Spectral,
        SharpnessTarget::EdgeCount,
        SharpnessTarget::Fractional,
        SharpnessTarget::FractionalRegular,
        SharpnessTarget::FractionalWide,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SharpnessTarget::Spectral => "spectral",
            SharpnessTarget::EdgeCount => "edge-count",
            SharpnessTarget::Fractional => "fractional",
            SharpnessTarget::FractionalRegular => "fractional-regular",
            SharpnessTarget::FractionalWide => "fractional-wide",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|t| t.name() == name)
    }

    pub fn needs_strict_b(self) -> bool {
        matches!(
            self,
            SharpnessTarget::Spectral | SharpnessTarget::EdgeCount | SharpnessTarget::Fractional
        )
    }

    pub fn is_fractional(self) -> bool {
        !matches!(self, SharpnessTarget::Spectral | SharpnessTarget::EdgeCount)
    }

    pub fn min_order(self, a: usize, b: usize, k: usize) -> usize {
        match self {
            SharpnessTarget::EdgeCount => edge_condition_min_order(a, b, k),
            SharpnessTarget::FractionalRegular => regular_min_order(a, k),
            _ => spectral_min_order(a, b, k),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bounds_match_hand_evaluation() {
        // (4 + 4 + 2 + 0)/2 + 1 = 6
        assert_eq!(bracket_min_order(1, 2, 0), 6);
        // (8 + 6 + 6 + 5)/2 + 1 = 13.5 → 14
        assert_eq!(bracket_min_order(2, 3, 1), 14);
        // (12 + 6 + 9)/2 + 2 = 15.5 → 16
        assert_eq!(maximality_min_order(3, 3, 0), 16);
        // 4 + 5 + 0 + 7 = 16
        assert_eq!(edge_condition_min_order(1, 2, 0), 16);
        // 8 + 7.5 + 4 + 7 = 26.5 → 27
        assert_eq!(edge_condition_min_order(2, 3, 1), 27);
        assert_eq!(spectral_min_order(1, 2, 0), 40);
        assert_eq!(regular_min_order(2, 0), 48);
        for r in 1..6 {
            assert_eq!(regular_min_order(r, 0), 4 * (r + 1) * (r + 2));
        }
    }

    #[test]
    fn layout_bound() {
        assert_eq!(layout_min_order(1, 2, 0), 5);
        assert_eq!(layout_min_order(4, 4, 0), 12);
        assert_eq!(at_least_layout(3, 4, 4, 0), 12);
    }

    #[test]
    fn target_names_round_trip() {
        for t in SharpnessTarget::ALL {
            assert_eq!(SharpnessTarget::from_name(t.name()), Some(t));
            assert_eq!(
                serde_json::to_string(&t).unwrap(),
                format!("\"{}\"", t.name())
            );
        }
    }
}

//! Fixed inputs shared by the benchmarks.

use lwik::representations::RepresentationId;
use lwik::{c64, Complex64};

/// Points covering the regimes of the oracle: near the origin, near the
/// branch point, moderate, just off the cut, and very large.
pub fn oracle_points() -> Vec<(&'static str, Complex64)> {
    vec![
        ("small", c64(1e-3, 2e-3)),
        ("branch", c64(-0.3678, 1e-6)),
        ("moderate", c64(1.0, 1.0)),
        ("near-cut", c64(-5.0, 1e-9)),
        ("large", c64(1e6, -3e5)),
    ]
}

/// A point inside the domain of `rep`, taken from its standard grid.
pub fn sample_point(rep: RepresentationId) -> Complex64 {
    let grid = rep.domain().standard_grid();
    grid[grid.len() / 2]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sample_points_lie_in_domains() {
        for rep in RepresentationId::ALL {
            assert!(rep.domain().contains(sample_point(rep)), "{rep}");
        }
    }
}

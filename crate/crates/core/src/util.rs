//! Small numeric helpers shared across modules.

/// Piecewise-linear interpolation on a sorted grid, clamped at the ends.
pub fn interp1(xs: &[f64], ys: &[f64], x: f64) -> f64 {
    debug_assert_eq!(xs.len(), ys.len());
    debug_assert!(!xs.is_empty());
    if x <= xs[0] {
        return ys[0];
    }
    if x >= xs[xs.len() - 1] {
        return ys[ys.len() - 1];
    }
    let hi = xs.partition_point(|v| *v < x).max(1);
    let lo = hi - 1;
    let a = (x - xs[lo]) / (xs[hi] - xs[lo]);
    ys[lo] + a * (ys[hi] - ys[lo])
}

/// Index pair and fraction for bilinear lookups, clamped to the grid.
/// Returns (lo, frac, clamped).
pub fn bracket(grid: &[f64], x: f64) -> (usize, f64, bool) {
    let n = grid.len();
    if x <= grid[0] {
        return (0, 0.0, x < grid[0] - 1e-12);
    }
    if x >= grid[n - 1] {
        return (n - 2, 1.0, x > grid[n - 1] + 1e-12);
    }
    let hi = grid.partition_point(|v| *v < x).max(1);
    let lo = hi - 1;
    ((lo).min(n - 2), (x - grid[lo]) / (grid[hi] - grid[lo]), false)
}

/// Kahan compensated sum.
pub fn kahan_sum(values: impl IntoIterator<Item = f64>) -> f64 {
    let mut sum = 0.0;
    let mut c = 0.0;
    for v in values {
        let y = v - c;
        let t = sum + y;
        c = (t - sum) - y;
        sum = t;
    }
    sum
}

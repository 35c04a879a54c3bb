//! Prefix-sum kernels for bridge functionals of a discrete path.
//!
//! Every self-normalized statistic in this crate is a ratio of a chord gap
//! `Y_k - Y_a - (k-a)/(b-a) (Y_b - Y_a)` to the square root of summed squared
//! deviations of the path from a chord. With prefix sums of `Y`, `Y²` and
//! `i·Y` both quantities cost O(1) per evaluation after O(N) setup.

/// A path `Y_0, …, Y_N` supporting O(1) chord and bridge queries.
pub(crate) trait BridgePath {
    /// Index of the last point, `N`.
    fn last(&self) -> usize;

    /// `Y_k - Y_a - (k-a)/(b-a) (Y_b - Y_a)`.
    fn chord_gap(&self, a: usize, k: usize, b: usize) -> f64;

    /// `Σ_{i=c}^{e} (Y_i - Y_a - (i-a)/(b-a) (Y_b - Y_a))²`.
    ///
    /// Returns exactly `0.0` iff the sum vanishes (for exact paths).
    fn chord_ss(&self, a: usize, b: usize, c: usize, e: usize) -> f64;

    /// Squared deviations from the chord over the whole segment `[a, b]`.
    fn bridge_ss(&self, a: usize, b: usize) -> f64 {
        self.chord_ss(a, b, a, b)
    }
}

/// `Σ_{u=0}^{x} u²`.
fn sum_sq_to(x: i128) -> i128 {
    if x < 0 {
        0
    } else {
        x * (x + 1) * (2 * x + 1) / 6
    }
}

fn sum_to(x: i128) -> i128 {
    if x < 0 {
        0
    } else {
        x * (x + 1) / 2
    }
}

/// Path of integer partial sums, evaluated in exact 128-bit arithmetic.
///
/// Magnitudes grow like `N⁷` in the worst case, so lengths are capped at
/// [`ExactPath::MAX_STEPS`].
#[derive(Debug, Default, Clone)]
pub(crate) struct ExactPath {
    y: Vec<i64>,
    s1: Vec<i128>,
    s2: Vec<i128>,
    sy: Vec<i128>,
}

impl ExactPath {
    pub(crate) const MAX_STEPS: usize = 100_000;

    /// Rebuilds the path from increments `steps[i] - center`, with `Y_0 = 0`.
    pub(crate) fn rebuild<I>(&mut self, steps: I, center: i64)
    where
        I: IntoIterator<Item = i64>,
    {
        self.y.clear();
        self.s1.clear();
        self.s2.clear();
        self.sy.clear();
        self.y.push(0);
        for d in steps {
            let prev = *self.y.last().unwrap();
            self.y.push(prev + d - center);
        }
        self.s1.push(0);
        self.s2.push(0);
        self.sy.push(0);
        let (mut a1, mut a2, mut ay) = (0i128, 0i128, 0i128);
        for (i, &v) in self.y.iter().enumerate() {
            let v = i128::from(v);
            a1 += v;
            a2 += v * v;
            ay += i as i128 * v;
            self.s1.push(a1);
            self.s2.push(a2);
            self.sy.push(ay);
        }
    }

    pub(crate) fn from_steps(steps: &[i64], center: i64) -> Self {
        let mut p = Self::default();
        p.rebuild(steps.iter().copied(), center);
        p
    }

    fn level(&self, i: usize) -> i128 {
        i128::from(self.y[i])
    }

    /// `(b-a)` times the chord gap, exactly.
    pub(crate) fn chord_gap_scaled(&self, a: usize, k: usize, b: usize) -> i128 {
        let ya = self.level(a);
        (b - a) as i128 * (self.level(k) - ya) - (k - a) as i128 * (self.level(b) - ya)
    }

    /// `(b-a)²` times the chord sum of squares, exactly.
    pub(crate) fn chord_ss_scaled(&self, a: usize, b: usize, c: usize, e: usize) -> i128 {
        debug_assert!(a < b && c <= e && e <= self.last());
        let len = (b - a) as i128;
        let ya = self.level(a);
        let dy = self.level(b) - ya;
        let cnt = (e - c + 1) as i128;
        let sum_y = self.s1[e + 1] - self.s1[c];
        let sum_y2 = self.s2[e + 1] - self.s2[c];
        let sum_iy = self.sy[e + 1] - self.sy[c];
        let (u_lo, u_hi) = ((c - a) as i128, (e - a) as i128);
        let sum_u = sum_to(u_hi) - sum_to(u_lo - 1);
        let sum_u2 = sum_sq_to(u_hi) - sum_sq_to(u_lo - 1);
        let q2 = sum_y2 - 2 * ya * sum_y + cnt * ya * ya;
        let uq = sum_iy - a as i128 * sum_y - ya * sum_u;
        len * len * q2 - 2 * len * dy * uq + dy * dy * sum_u2
    }
}

impl BridgePath for ExactPath {
    fn last(&self) -> usize {
        self.y.len() - 1
    }

    fn chord_gap(&self, a: usize, k: usize, b: usize) -> f64 {
        self.chord_gap_scaled(a, k, b) as f64 / (b - a) as f64
    }

    fn chord_ss(&self, a: usize, b: usize, c: usize, e: usize) -> f64 {
        let len = (b - a) as f64;
        self.chord_ss_scaled(a, b, c, e) as f64 / (len * len)
    }
}

/// Real-valued path, used for discretized limit processes.
#[derive(Debug, Clone)]
pub(crate) struct FloatPath {
    y: Vec<f64>,
    s1: Vec<f64>,
    s2: Vec<f64>,
    sy: Vec<f64>,
}

impl FloatPath {
    /// `levels` are `Y_0..=Y_N`.
    pub(crate) fn new(levels: Vec<f64>) -> Self {
        let mut s1 = Vec::with_capacity(levels.len() + 1);
        let mut s2 = Vec::with_capacity(levels.len() + 1);
        let mut sy = Vec::with_capacity(levels.len() + 1);
        let (mut a1, mut a2, mut ay) = (0.0, 0.0, 0.0);
        s1.push(0.0);
        s2.push(0.0);
        sy.push(0.0);
        for (i, &v) in levels.iter().enumerate() {
            a1 += v;
            a2 += v * v;
            ay += i as f64 * v;
            s1.push(a1);
            s2.push(a2);
            sy.push(ay);
        }
        Self { y: levels, s1, s2, sy }
    }
}

impl BridgePath for FloatPath {
    fn last(&self) -> usize {
        self.y.len() - 1
    }

    fn chord_gap(&self, a: usize, k: usize, b: usize) -> f64 {
        let ya = self.y[a];
        (self.y[k] - ya) - (k - a) as f64 / (b - a) as f64 * (self.y[b] - ya)
    }

    fn chord_ss(&self, a: usize, b: usize, c: usize, e: usize) -> f64 {
        let len = (b - a) as f64;
        let ya = self.y[a];
        let slope = (self.y[b] - ya) / len;
        let cnt = (e - c + 1) as f64;
        let sum_y = self.s1[e + 1] - self.s1[c];
        let sum_y2 = self.s2[e + 1] - self.s2[c];
        let sum_iy = self.sy[e + 1] - self.sy[c];
        let (u_lo, u_hi) = ((c - a) as i128, (e - a) as i128);
        let sum_u = (sum_to(u_hi) - sum_to(u_lo - 1)) as f64;
        let sum_u2 = (sum_sq_to(u_hi) - sum_sq_to(u_lo - 1)) as f64;
        let q2 = sum_y2 - 2.0 * ya * sum_y + cnt * ya * ya;
        let uq = sum_iy - a as f64 * sum_y - ya * sum_u;
        // Round-off can push a true zero slightly negative.
        (q2 - 2.0 * slope * uq + slope * slope * sum_u2).max(0.0)
    }
}

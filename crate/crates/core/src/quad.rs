//! Gauss–Legendre rules and a small adaptive integrator.

use std::sync::OnceLock;

/// Nodes and weights of an `n`-point Gauss–Legendre rule on `[-1, 1]`.
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussLegendre {
    pub fn new(n: usize) -> Self {
        assert!(n >= 1);
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let m = n.div_ceil(2);
        for i in 0..m {
            // Tricomi initial guess, then Newton on P_n
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre(n, x);
            if d != 0.0 {
                dp = d;
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        Self { nodes, weights }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Integral of `f` over `[a, b]`.
    #[inline]
    pub fn integrate<F: FnMut(f64) -> f64>(&self, a: f64, b: f64, mut f: F) -> f64 {
        let c = 0.5 * (a + b);
        let h = 0.5 * (b - a);
        let mut s = 0.0;
        for (x, w) in self.nodes.iter().zip(&self.weights) {
            s += w * f(c + h * x);
        }
        s * h
    }

    pub fn nodes(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.nodes.iter().copied().zip(self.weights.iter().copied())
    }
}

fn legendre(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
        p0 = p1;
        p1 = p2;
    }
    let p = if n == 0 { 1.0 } else { p1 };
    let d = n as f64 * (x * p - p0) / (x * x - 1.0);
    (p, d)
}

macro_rules! cached_rule {
    ($name:ident, $n:expr) => {
        pub fn $name() -> &'static GaussLegendre {
            static RULE: OnceLock<GaussLegendre> = OnceLock::new();
            RULE.get_or_init(|| GaussLegendre::new($n))
        }
    };
}

cached_rule!(gl8, 8);
cached_rule!(gl10, 10);
cached_rule!(gl16, 16);
cached_rule!(gl20, 20);
cached_rule!(gl32, 32);

/// Result of an adaptive integration together with its error estimate.
#[derive(Debug, Clone, Copy)]
pub struct Quadrature {
    pub value: f64,
    pub error: f64,
}

/// Globally adaptive bisection using 10- and 20-point Gauss–Legendre
/// on each panel. Stops when the summed panel error is below
/// `max(abs_tol, rel_tol * |value|)` or after `max_panels` panels.
pub fn adaptive<F: FnMut(f64) -> f64>(
    mut f: F,
    a: f64,
    b: f64,
    abs_tol: f64,
    rel_tol: f64,
) -> Quadrature {
    struct Panel {
        a: f64,
        b: f64,
        value: f64,
        error: f64,
    }
    let mut eval = |a: f64, b: f64| {
        let coarse = gl10().integrate(a, b, &mut f);
        let fine = gl20().integrate(a, b, &mut f);
        Panel {
            a,
            b,
            value: fine,
            error: (fine - coarse).abs(),
        }
    };
    let max_panels = 20_000;
    let mut panels = vec![eval(a, b)];
    loop {
        let value: f64 = panels.iter().map(|p| p.value).sum();
        let error: f64 = panels.iter().map(|p| p.error).sum();
        if error <= abs_tol.max(rel_tol * value.abs()) || panels.len() >= max_panels {
            return Quadrature { value, error };
        }
        let (worst, _) = panels
            .iter()
            .enumerate()
            .max_by(|x, y| x.1.error.total_cmp(&y.1.error))
            .expect("non-empty");
        let p = panels.swap_remove(worst);
        let mid = 0.5 * (p.a + p.b);
        panels.push(eval(p.a, mid));
        panels.push(eval(mid, p.b));
    }
}

/// `∫_a^∞ f` through the substitution `t = a e^u`, integrated over
/// `u ∈ [0, u_max]` in unit panels. `f` must decay at least like `t^{-1-δ}`.
pub fn integrate_to_infinity<F: FnMut(f64) -> f64>(mut f: F, a: f64, u_max: f64) -> f64 {
    assert!(a > 0.0);
    let rule = gl20();
    let mut total = 0.0;
    let mut u = 0.0;
    let step = 0.5;
    while u < u_max {
        let hi = (u + step).min(u_max);
        total += rule.integrate(u, hi, |v| {
            let t = a * v.exp();
            f(t) * t
        });
        u = hi;
    }
    total
}

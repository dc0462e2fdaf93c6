//! Derivative-free local minimization (Nelder–Mead simplex).
//!
//! The container objectives are piecewise smooth with kinks where the
//! touching vertex changes, so callers restart from the returned point
//! (`minimize_with_restarts`) rather than trusting one simplex collapse.

#[derive(Debug, Clone, Copy)]
pub struct NelderMeadOptions {
    /// Stop when every simplex vertex is within `xtol` of the best one
    /// (max-norm)...
    pub xtol: f64,
    /// ...and the objective spread is at most `ftol`.
    pub ftol: f64,
    pub max_evals: usize,
}

impl Default for NelderMeadOptions {
    fn default() -> Self {
        NelderMeadOptions {
            xtol: 1e-8,
            ftol: 1e-12,
            max_evals: 4000,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Minimum {
    pub x: Vec<f64>,
    pub value: f64,
    pub evals: usize,
    pub converged: bool,
}

/// Minimizes `f` starting from `x0` with an axis-aligned initial simplex of
/// edge lengths `steps`. Non-finite objective values act as barriers.
pub fn nelder_mead<F>(mut f: F, x0: &[f64], steps: &[f64], opts: &NelderMeadOptions) -> Minimum
where
    F: FnMut(&[f64]) -> f64,
{
    const REFLECT: f64 = 1.0;
    const EXPAND: f64 = 2.0;
    const CONTRACT: f64 = 0.5;
    const SHRINK: f64 = 0.5;

    let n = x0.len();
    let mut evals = 0usize;
    let mut eval = |x: &[f64], evals: &mut usize| {
        *evals += 1;
        let v = f(x);
        if v.is_nan() {
            f64::INFINITY
        } else {
            v
        }
    };

    let mut simplex: Vec<(Vec<f64>, f64)> = Vec::with_capacity(n + 1);
    let v0 = eval(x0, &mut evals);
    simplex.push((x0.to_vec(), v0));
    for i in 0..n {
        let mut x = x0.to_vec();
        x[i] += steps[i];
        let mut v = eval(&x, &mut evals);
        if !v.is_finite() {
            // step into the barrier: try the other side
            x[i] = x0[i] - steps[i];
            v = eval(&x, &mut evals);
        }
        simplex.push((x, v));
    }

    let mut converged = false;
    while evals < opts.max_evals {
        simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
        let best = &simplex[0];
        let worst_v = simplex[n].1;
        let xspread = simplex[1..]
            .iter()
            .flat_map(|(x, _)| x.iter().zip(&best.0).map(|(a, b)| (a - b).abs()))
            .fold(0.0, f64::max);
        if xspread <= opts.xtol && (worst_v - best.1).abs() <= opts.ftol.max(0.0)
            || xspread <= opts.xtol * 1e-3
        {
            converged = true;
            break;
        }

        let centroid: Vec<f64> = (0..n)
            .map(|j| simplex[..n].iter().map(|(x, _)| x[j]).sum::<f64>() / n as f64)
            .collect();
        let along = |t: f64| -> Vec<f64> {
            centroid
                .iter()
                .zip(&simplex[n].0)
                .map(|(c, w)| c + t * (c - w))
                .collect()
        };

        let xr = along(REFLECT);
        let vr = eval(&xr, &mut evals);
        if vr < simplex[0].1 {
            let xe = along(EXPAND);
            let ve = eval(&xe, &mut evals);
            simplex[n] = if ve < vr { (xe, ve) } else { (xr, vr) };
        } else if vr < simplex[n - 1].1 {
            simplex[n] = (xr, vr);
        } else {
            let (xc, vc) = if vr < worst_v {
                let xc = along(CONTRACT);
                let vc = eval(&xc, &mut evals);
                (xc, vc)
            } else {
                let xc = along(-CONTRACT);
                let vc = eval(&xc, &mut evals);
                (xc, vc)
            };
            if vc < worst_v.min(vr) {
                simplex[n] = (xc, vc);
            } else {
                let x_best = simplex[0].0.clone();
                for item in simplex.iter_mut().skip(1) {
                    let xs: Vec<f64> = x_best
                        .iter()
                        .zip(&item.0)
                        .map(|(b, x)| b + SHRINK * (x - b))
                        .collect();
                    let vs = eval(&xs, &mut evals);
                    *item = (xs, vs);
                }
            }
        }
    }
    simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
    let (x, value) = simplex.swap_remove(0);
    Minimum {
        x,
        value,
        evals,
        converged,
    }
}

/// Runs `nelder_mead` repeatedly, restarting a fresh simplex (with steps
/// shrunk tenfold each round) at the previous minimum until a round stops
/// improving the objective.
pub fn minimize_with_restarts<F>(
    mut f: F,
    x0: &[f64],
    steps: &[f64],
    opts: &NelderMeadOptions,
    max_rounds: usize,
) -> Minimum
where
    F: FnMut(&[f64]) -> f64,
{
    let mut best = nelder_mead(&mut f, x0, steps, opts);
    let mut steps: Vec<f64> = steps.to_vec();
    let mut total = best.evals;
    for _ in 1..max_rounds {
        for s in steps.iter_mut() {
            *s *= 0.1;
            if s.abs() < opts.xtol * 10.0 {
                *s = opts.xtol * 10.0 * s.signum();
            }
        }
        let next = nelder_mead(&mut f, &best.x, &steps, opts);
        total += next.evals;
        let improved = next.value < best.value - opts.ftol;
        if next.value <= best.value {
            best = next;
        }
        if !improved {
            break;
        }
    }
    best.evals = total;
    best
}

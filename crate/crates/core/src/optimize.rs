//! Derivative-free minimization: exhaustive grid scan plus Nelder-Mead refinement.

use rayon::prelude::*;

#[derive(Debug, Clone, Copy)]
pub struct NelderMeadOptions {
    pub max_iterations: usize,
    /// Stop a run once the simplex values agree to this spread.
    pub value_tol: f64,
    /// Stop a run once every vertex lies this close to the best one.
    pub size_tol: f64,
    /// Restart from the best vertex until a restart improves by less than this.
    pub restart_improvement: f64,
    pub max_restarts: usize,
}

impl Default for NelderMeadOptions {
    fn default() -> Self {
        Self {
            max_iterations: 2000,
            value_tol: 1e-13,
            size_tol: 1e-10,
            restart_improvement: 1e-9,
            max_restarts: 20,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Minimum {
    pub point: Vec<f64>,
    pub value: f64,
    pub evaluations: usize,
}

const REFLECT: f64 = 1.0;
const EXPAND: f64 = 2.0;
const CONTRACT: f64 = 0.5;
const SHRINK: f64 = 0.5;

/// Nelder-Mead with restarts. `step` sets the initial simplex edge along each axis.
pub fn nelder_mead<F>(f: F, start: &[f64], step: &[f64], opts: &NelderMeadOptions) -> Minimum
where
    F: Fn(&[f64]) -> f64,
{
    let mut evaluations = 0;
    let mut best = start.to_vec();
    let mut best_value = f(&best);
    evaluations += 1;

    for _ in 0..=opts.max_restarts {
        let (point, value, evals) = nelder_mead_run(&f, &best, step, opts);
        evaluations += evals;
        let improvement = best_value - value;
        if value < best_value {
            best = point;
            best_value = value;
        }
        if improvement < opts.restart_improvement {
            break;
        }
    }

    Minimum {
        point: best,
        value: best_value,
        evaluations,
    }
}

fn nelder_mead_run<F>(f: &F, start: &[f64], step: &[f64], opts: &NelderMeadOptions) -> (Vec<f64>, f64, usize)
where
    F: Fn(&[f64]) -> f64,
{
    let n = start.len();
    let mut simplex: Vec<Vec<f64>> = Vec::with_capacity(n + 1);
    simplex.push(start.to_vec());
    for i in 0..n {
        let mut v = start.to_vec();
        v[i] += step[i];
        simplex.push(v);
    }
    let mut values: Vec<f64> = simplex.iter().map(|v| f(v)).collect();
    let mut evals = n + 1;

    for _ in 0..opts.max_iterations {
        // order best to worst; ties keep vertex order
        let mut order: Vec<usize> = (0..=n).collect();
        order.sort_by(|&a, &b| values[a].total_cmp(&values[b]).then(a.cmp(&b)));
        simplex = order.iter().map(|&i| simplex[i].clone()).collect();
        values = order.iter().map(|&i| values[i]).collect();

        let spread = values[n] - values[0];
        let size = simplex[1..]
            .iter()
            .map(|v| v.iter().zip(&simplex[0]).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max))
            .fold(0.0, f64::max);
        if spread <= opts.value_tol || size <= opts.size_tol {
            break;
        }

        let centroid: Vec<f64> = (0..n)
            .map(|j| simplex[..n].iter().map(|v| v[j]).sum::<f64>() / n as f64)
            .collect();
        let along = |t: f64| -> Vec<f64> {
            centroid
                .iter()
                .zip(&simplex[n])
                .map(|(c, w)| c + t * (w - c))
                .collect()
        };

        let reflected = along(-REFLECT);
        let fr = f(&reflected);
        evals += 1;

        if fr < values[0] {
            let expanded = along(-EXPAND);
            let fe = f(&expanded);
            evals += 1;
            if fe < fr {
                simplex[n] = expanded;
                values[n] = fe;
            } else {
                simplex[n] = reflected;
                values[n] = fr;
            }
        } else if fr < values[n - 1] {
            simplex[n] = reflected;
            values[n] = fr;
        } else {
            let (candidate, fc) = if fr < values[n] {
                let outside = along(-CONTRACT);
                let fo = f(&outside);
                (outside, fo)
            } else {
                let inside = along(CONTRACT);
                let fi = f(&inside);
                (inside, fi)
            };
            evals += 1;
            if fc < values[n].min(fr) {
                simplex[n] = candidate;
                values[n] = fc;
            } else {
                for i in 1..=n {
                    simplex[i] = simplex[0]
                        .iter()
                        .zip(&simplex[i])
                        .map(|(b, v)| b + SHRINK * (v - b))
                        .collect();
                    values[i] = f(&simplex[i]);
                }
                evals += n;
            }
        }
    }

    let (idx, _) = values
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.total_cmp(b.1).then(a.0.cmp(&b.0)))
        .expect("simplex is non-empty");
    (simplex[idx].clone(), values[idx], evals)
}

/// Minimum of `f` over the product grid `axes[0] x axes[1] x ...`, evaluated in
/// parallel. Ties resolve to the lexicographically first grid point.
pub fn grid_minimum<F>(f: F, axes: &[Vec<f64>]) -> Minimum
where
    F: Fn(&[f64]) -> f64 + Sync,
{
    let total: usize = axes.iter().map(Vec::len).product();
    let point_at = |mut idx: usize| -> Vec<f64> {
        let mut p = vec![0.0; axes.len()];
        for (d, axis) in axes.iter().enumerate().rev() {
            p[d] = axis[idx % axis.len()];
            idx /= axis.len();
        }
        p
    };
    let (value, idx) = (0..total)
        .into_par_iter()
        .map(|i| (f(&point_at(i)), i))
        .reduce(
            || (f64::INFINITY, usize::MAX),
            |a, b| match a.0.total_cmp(&b.0) {
                std::cmp::Ordering::Less => a,
                std::cmp::Ordering::Greater => b,
                std::cmp::Ordering::Equal => if a.1 <= b.1 { a } else { b },
            },
        );
    Minimum {
        point: point_at(idx),
        value,
        evaluations: total,
    }
}

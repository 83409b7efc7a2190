//! Derivative-free Nelder–Mead minimizer used to polish grid minima.

#[derive(Debug, Clone, Copy)]
pub struct NelderMeadOptions {
    /// Stop once every vertex lies within this distance of every other.
    pub diameter_tol: f64,
    pub max_evals: usize,
}

impl Default for NelderMeadOptions {
    fn default() -> Self {
        Self {
            diameter_tol: 1e-9,
            max_evals: 500,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Minimum<const N: usize> {
    pub point: [f64; N],
    pub value: f64,
    pub evals: usize,
    pub converged: bool,
}

const REFLECT: f64 = 1.0;
const EXPAND: f64 = 2.0;
const CONTRACT: f64 = 0.5;
const SHRINK: f64 = 0.5;

fn diameter<const N: usize>(simplex: &[([f64; N], f64)]) -> f64 {
    let mut d = 0.0f64;
    for (i, (a, _)) in simplex.iter().enumerate() {
        for (b, _) in &simplex[i + 1..] {
            let dist = a
                .iter()
                .zip(b)
                .map(|(x, y)| (x - y) * (x - y))
                .sum::<f64>()
                .sqrt();
            d = d.max(dist);
        }
    }
    d
}

fn along<const N: usize>(from: &[f64; N], to: &[f64; N], t: f64) -> [f64; N] {
    std::array::from_fn(|k| from[k] + t * (to[k] - from[k]))
}

/// Minimize `f` from an axis-aligned initial simplex at `start` with edge `step[k]`.
pub fn nelder_mead<const N: usize>(
    mut f: impl FnMut(&[f64; N]) -> f64,
    start: [f64; N],
    step: [f64; N],
    opts: NelderMeadOptions,
) -> Minimum<N> {
    let mut evals = 0;
    let mut eval = |x: &[f64; N], evals: &mut usize| {
        *evals += 1;
        f(x)
    };

    let mut simplex: Vec<([f64; N], f64)> = Vec::with_capacity(N + 1);
    simplex.push((start, eval(&start, &mut evals)));
    for k in 0..N {
        let mut x = start;
        x[k] += step[k];
        simplex.push((x, eval(&x, &mut evals)));
    }

    let mut converged = false;
    loop {
        simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
        if diameter(&simplex) < opts.diameter_tol {
            converged = true;
            break;
        }
        if evals >= opts.max_evals {
            break;
        }

        let worst = simplex[N];
        let centroid: [f64; N] =
            std::array::from_fn(|k| simplex[..N].iter().map(|(x, _)| x[k]).sum::<f64>() / N as f64);

        let reflected = along(&centroid, &worst.0, -REFLECT);
        let fr = eval(&reflected, &mut evals);
        if fr < simplex[0].1 {
            let expanded = along(&centroid, &worst.0, -EXPAND);
            let fe = eval(&expanded, &mut evals);
            simplex[N] = if fe < fr {
                (expanded, fe)
            } else {
                (reflected, fr)
            };
            continue;
        }
        if fr < simplex[N - 1].1 {
            simplex[N] = (reflected, fr);
            continue;
        }

        // contract toward whichever of the reflected and worst points is better
        let (target, ft) = if fr < worst.1 { (reflected, fr) } else { worst };
        let contracted = along(&centroid, &target, CONTRACT);
        let fc = eval(&contracted, &mut evals);
        if fc < ft {
            simplex[N] = (contracted, fc);
            continue;
        }

        let best = simplex[0].0;
        for vertex in simplex.iter_mut().skip(1) {
            let x = along(&best, &vertex.0, SHRINK);
            *vertex = (x, eval(&x, &mut evals));
        }
    }

    let (point, value) = simplex[0];
    Minimum {
        point,
        value,
        evals,
        converged,
    }
}

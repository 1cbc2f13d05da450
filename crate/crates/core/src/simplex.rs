//! Nelder–Mead downhill simplex (minimization).

use crate::error::Result;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimplexOptions {
    /// Edge length of the initial right-angled simplex.
    pub step: f64,
    /// Largest number of objective calls for one run.
    pub max_evaluations: usize,
    /// Converged once the spread of vertex values is at most `f_tol` and the
    /// simplex diameter is at most `x_tol`, or the diameter falls below `x_floor`.
    pub f_tol: f64,
    pub x_tol: f64,
    pub x_floor: f64,
}

impl Default for SimplexOptions {
    fn default() -> Self {
        SimplexOptions {
            step: 0.3,
            max_evaluations: 2000,
            f_tol: 1e-15,
            x_tol: 1e-8,
            x_floor: 1e-12,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimplexOutcome {
    pub best: Vec<f64>,
    pub value: f64,
    pub evaluations: usize,
    pub converged: bool,
}

/// Minimizes `f` from `x0`. `f` returns `Ok(None)` when an outer budget is
/// spent, which ends the run early with the best vertex so far.
pub fn nelder_mead<F>(mut f: F, x0: &[f64], opts: &SimplexOptions) -> Result<SimplexOutcome>
where
    F: FnMut(&[f64]) -> Result<Option<f64>>,
{
    const REFLECT: f64 = 1.0;
    const EXPAND: f64 = 2.0;
    const CONTRACT: f64 = 0.5;
    const SHRINK: f64 = 0.5;

    let n = x0.len();
    let mut evaluations = 0usize;
    let mut call = |x: &[f64], evaluations: &mut usize| -> Result<Option<f64>> {
        if *evaluations >= opts.max_evaluations {
            return Ok(None);
        }
        let v = f(x)?;
        if v.is_some() {
            *evaluations += 1;
        }
        Ok(v)
    };

    let mut simplex: Vec<(Vec<f64>, f64)> = Vec::with_capacity(n + 1);
    let finish = |simplex: &mut Vec<(Vec<f64>, f64)>, evaluations, converged| {
        simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
        let (best, value) = simplex[0].clone();
        Ok(SimplexOutcome {
            best,
            value,
            evaluations,
            converged,
        })
    };

    let Some(v0) = call(x0, &mut evaluations)? else {
        return Ok(SimplexOutcome {
            best: x0.to_vec(),
            value: f64::INFINITY,
            evaluations,
            converged: false,
        });
    };
    simplex.push((x0.to_vec(), v0));
    for i in 0..n {
        let mut x = x0.to_vec();
        x[i] += opts.step;
        match call(&x, &mut evaluations)? {
            Some(v) => simplex.push((x, v)),
            None => return finish(&mut simplex, evaluations, false),
        }
    }

    loop {
        // stable sort keeps earlier vertices ahead on ties
        simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
        let spread = simplex[n].1 - simplex[0].1;
        let diameter = simplex[1..]
            .iter()
            .map(|(x, _)| max_abs_diff(x, &simplex[0].0))
            .fold(0.0, f64::max);
        if (spread <= opts.f_tol && diameter <= opts.x_tol) || diameter <= opts.x_floor {
            return finish(&mut simplex, evaluations, true);
        }

        let centroid: Vec<f64> = (0..n)
            .map(|k| simplex[..n].iter().map(|(x, _)| x[k]).sum::<f64>() / n as f64)
            .collect();
        let worst = simplex[n].clone();
        let along = |t: f64| -> Vec<f64> {
            centroid
                .iter()
                .zip(&worst.0)
                .map(|(c, w)| c + t * (c - w))
                .collect()
        };

        let xr = along(REFLECT);
        let Some(fr) = call(&xr, &mut evaluations)? else {
            return finish(&mut simplex, evaluations, false);
        };
        if fr < simplex[0].1 {
            let xe = along(EXPAND);
            let Some(fe) = call(&xe, &mut evaluations)? else {
                simplex[n] = (xr, fr);
                return finish(&mut simplex, evaluations, false);
            };
            simplex[n] = if fe < fr { (xe, fe) } else { (xr, fr) };
            continue;
        }
        if fr < simplex[n - 1].1 {
            simplex[n] = (xr, fr);
            continue;
        }
        let (xc, outside) = if fr < worst.1 {
            (along(CONTRACT * REFLECT), true)
        } else {
            (along(-CONTRACT), false)
        };
        let Some(fc) = call(&xc, &mut evaluations)? else {
            if fr < worst.1 {
                simplex[n] = (xr, fr);
            }
            return finish(&mut simplex, evaluations, false);
        };
        let accept = if outside { fc <= fr } else { fc < worst.1 };
        if accept {
            simplex[n] = (xc, fc);
            continue;
        }

        let anchor = simplex[0].0.clone();
        for vertex in simplex.iter_mut().skip(1) {
            let x: Vec<f64> = anchor
                .iter()
                .zip(&vertex.0)
                .map(|(a, v)| a + SHRINK * (v - a))
                .collect();
            match call(&x, &mut evaluations)? {
                Some(v) => *vertex = (x, v),
                None => return finish(&mut simplex, evaluations, false),
            }
        }
    }
}

fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

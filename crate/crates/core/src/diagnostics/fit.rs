use crate::error::{Error, Result};

/// Largest relative deviation for which a slope is judged at all.
pub const RESIDUAL_LIMIT: f64 = 0.25;

/// Least-squares line through `(ln x, ln y)`.
#[derive(Clone, Debug, PartialEq)]
pub struct PowerLawFit {
    pub abscissae: Vec<f64>,
    pub ordinates: Vec<f64>,
    pub slope: f64,
    pub intercept: f64,
    /// Largest `|fit - y| / y` over the data.
    pub residual: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FitStatus {
    Pass,
    Fail,
    /// The data do not follow a power law closely enough to judge the slope.
    Inconclusive,
}

impl std::fmt::Display for FitStatus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            FitStatus::Pass => "pass",
            FitStatus::Fail => "fail",
            FitStatus::Inconclusive => "inconclusive",
        })
    }
}

impl PowerLawFit {
    pub fn predict(&self, x: f64) -> f64 {
        (self.intercept + self.slope * x.ln()).exp()
    }

    pub fn judge(&self, expected: f64, tolerance: f64) -> FitStatus {
        if !(self.residual <= RESIDUAL_LIMIT) {
            FitStatus::Inconclusive
        } else if (self.slope - expected).abs() <= tolerance {
            FitStatus::Pass
        } else {
            FitStatus::Fail
        }
    }
}

pub fn fit_power_law(abscissae: &[f64], ordinates: &[f64]) -> Result<PowerLawFit> {
    if abscissae.len() != ordinates.len() {
        return Err(Error::Fit(format!("{} abscissae for {} ordinates", abscissae.len(), ordinates.len())));
    }
    if abscissae.len() < 3 {
        return Err(Error::Fit(format!("{} points, at least 3 needed", abscissae.len())));
    }
    if let Some(v) = abscissae.iter().chain(ordinates).find(|v| !(**v > 0.0 && v.is_finite())) {
        return Err(Error::Fit(format!("nonpositive or non-finite datum {v}")));
    }
    let xs: Vec<f64> = abscissae.iter().map(|x| x.ln()).collect();
    let ys: Vec<f64> = ordinates.iter().map(|y| y.ln()).collect();
    let m = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / m;
    let my = ys.iter().sum::<f64>() / m;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    if sxx == 0.0 {
        return Err(Error::Fit("abscissae are all equal".into()));
    }
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let residual = xs
        .iter()
        .zip(ordinates)
        .map(|(x, y)| ((intercept + slope * x).exp() - y).abs() / y)
        .fold(0.0, f64::max);
    Ok(PowerLawFit {
        abscissae: abscissae.to_vec(),
        ordinates: ordinates.to_vec(),
        slope,
        intercept,
        residual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_power() {
        let x = [1.0, 2.0, 4.0, 8.0];
        let y: Vec<f64> = x.iter().map(|v: &f64| 3.0 * v.powf(2.5)).collect();
        let f = fit_power_law(&x, &y).unwrap();
        assert!((f.slope - 2.5).abs() < 1e-10);
        assert!(f.residual < 1e-12);
        assert_eq!(f.judge(2.5, 0.1), FitStatus::Pass);
        assert_eq!(f.judge(1.0, 0.1), FitStatus::Fail);
    }

    #[test]
    fn constant_ordinates() {
        let f = fit_power_law(&[8.0, 16.0, 32.0], &[5.0, 5.0, 5.0]).unwrap();
        assert!(f.slope.abs() < 1e-14);
    }

    #[test]
    fn bad_input() {
        assert!(fit_power_law(&[1.0, 2.0], &[1.0, 2.0]).is_err());
        assert!(fit_power_law(&[1.0, 2.0, 3.0], &[1.0, 0.0, 2.0]).is_err());
        assert!(fit_power_law(&[1.0, -2.0, 3.0], &[1.0, 1.0, 2.0]).is_err());
    }

    #[test]
    fn scattered_data_inconclusive() {
        let f = fit_power_law(&[1.0, 2.0, 4.0], &[1.0, 10.0, 1.0]).unwrap();
        assert_eq!(f.judge(0.0, 10.0), FitStatus::Inconclusive);
    }
}

use super::GraphError;

/// Least-squares slope of `log size` against `log n`.
pub fn estimate_exponent(series: &[(f64, f64)]) -> Result<f64, GraphError> {
    if series.len() < 3 {
        return Err(GraphError::Degenerate(format!("need at least 3 points, got {}", series.len())));
    }
    if series.windows(2).any(|w| w[1].0 <= w[0].0) {
        return Err(GraphError::Degenerate("n must be strictly increasing".into()));
    }
    if series.iter().any(|&(n, s)| n <= 0.0 || s <= 0.0) {
        return Err(GraphError::Degenerate("values must be positive".into()));
    }
    let pts: Vec<(f64, f64)> = series.iter().map(|&(n, s)| (n.ln(), s.ln())).collect();
    let k = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / k;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / k;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    Ok(sxy / sxx)
}

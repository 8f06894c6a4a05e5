use rug::Float;

/// Γ(k + 1, x) = k!·e^{−x}·Σ_{j=0}^{k} x^j/j! for integer order k ≥ 0.
pub fn upper_incomplete_gamma_int(k: u32, x: &Float) -> Float {
    let prec = x.prec();
    // term_j = k!·x^j/j!, starting from term_0 = k!.
    let mut term = Float::with_val(prec, 1);
    for i in 2..=k {
        term *= i;
    }
    let mut sum = term.clone();
    for j in 1..=k {
        term *= x;
        term /= j;
        sum += &term;
    }
    sum * Float::with_val(prec, -x).exp()
}

/// Double-precision convenience wrapper.
pub fn upper_incomplete_gamma_int_f64(k: u32, x: f64) -> f64 {
    upper_incomplete_gamma_int(k, &Float::with_val(64, x)).to_f64()
}

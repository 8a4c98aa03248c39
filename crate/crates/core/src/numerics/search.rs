/// Largest value of `g` found by golden-section search on `[lo, hi]`.
///
/// Assumes `g` is unimodal on the bracket; otherwise returns the best
/// value visited.
pub fn golden_section_max<F: Fn(f64) -> f64>(g: F, lo: f64, hi: f64) -> f64 {
    let (mut lo, mut hi) = (lo, hi);
    let r = 0.5 * (5f64.sqrt() - 1.0);
    let mut x1 = hi - r * (hi - lo);
    let mut x2 = lo + r * (hi - lo);
    let (mut f1, mut f2) = (g(x1), g(x2));
    let mut top = f1.max(f2);
    for _ in 0..40 {
        if f1 >= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - r * (hi - lo);
            f1 = g(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + r * (hi - lo);
            f2 = g(x2);
        }
        top = top.max(f1).max(f2);
    }
    top
}

/// Richardson extrapolation of a quantity with error `O(h^order)` from grids
/// with steps `h` (coarse) and `h/2` (fine).
pub fn richardson(coarse: f64, fine: f64, order: u32) -> f64 {
    let factor = 2f64.powi(order as i32);
    (factor * fine - coarse) / (factor - 1.0)
}

use core::cmp::Ordering;

#[allow(unused_imports)] // inherent float methods shadow these when std is linked
use num_traits::Float;

use crate::C64;

/// Orders complex numbers by real part, then imaginary part. Real parts that
/// agree to within `quantum` are treated as equal so that rounding noise does
/// not flip the order of conjugate-like pairs.
pub(crate) fn quantized_cmp(a: C64, b: C64, quantum: f64) -> Ordering {
    if quantum > 0.0 {
        let ka = Float::round(a.re / quantum) as i64;
        let kb = Float::round(b.re / quantum) as i64;
        ka.cmp(&kb).then(a.im.total_cmp(&b.im))
    } else {
        a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im))
    }
}

pub(crate) fn ordering_quantum(values: &[C64]) -> f64 {
    let scale = values.iter().fold(1.0f64, |m, z| m.max(z.norm()));
    1e-9 * scale
}

//! Serializers: FOLD JSON for crease patterns, SVG drawings, and OBJ
//! meshes of folded states.

pub mod fold;
pub mod obj;
pub mod svg;

pub use fold::{export_fold, parse_fold, FoldDocument, FoldExportOptions, FoldParseError};
pub use obj::{export_obj, ObjOptions};
pub use svg::{export_svg, SvgOptions};

/// Render `num / den` as a terminating decimal without trailing zeros.
/// `den` must be a power of two or five times a power of ten so the result
/// is exact; callers use 2.
pub(crate) fn exact_decimal(num: i64, den: i64) -> String {
    debug_assert!(den > 0);
    let neg = num < 0;
    let n = num.abs();
    let int = n / den;
    let mut rem = n % den;
    let mut s = if neg && (int != 0 || rem != 0) { format!("-{int}") } else { int.to_string() };
    if rem != 0 {
        s.push('.');
        let mut guard = 0;
        while rem != 0 && guard < 18 {
            rem *= 10;
            s.push(char::from(b'0' + (rem / den) as u8));
            rem %= den;
            guard += 1;
        }
    }
    s
}

//! SVG rendering with the mountain/valley color code.

use std::fmt::Write;

use super::exact_decimal;
use crate::pattern::{CreasePattern, FoldAngle};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SvgOptions {
    /// Pixels per paper unit.
    pub scale: u32,
}

impl Default for SvgOptions {
    fn default() -> Self {
        SvgOptions { scale: 40 }
    }
}

/// Stroke color for a nontrivial angle.
pub fn crease_color(angle: FoldAngle) -> Option<&'static str> {
    match angle {
        FoldAngle::Mountain180 => Some("#ff0000"),
        FoldAngle::Mountain90 => Some("#ff8c00"),
        FoldAngle::Valley90 => Some("#00a000"),
        FoldAngle::Valley180 => Some("#0000ff"),
        FoldAngle::Flat => None,
    }
}

/// Render the pattern: a gray tetrakis underlay, then one `<line>` per
/// crease. Paper `v` grows upward, so the y axis is flipped.
pub fn export_svg(c: &CreasePattern, opts: SvgOptions) -> String {
    let s = i64::from(opts.scale);
    let (w, h) = (i64::from(c.width()), i64::from(c.height()));
    // Doubled coordinate to pixels.
    let x = |u: i32| exact_decimal(i64::from(u) * s, 2);
    let y = |v: i32| exact_decimal((2 * h - i64::from(v)) * s, 2);
    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{}" height="{}" viewBox="0 0 {} {}">"#,
        w * s,
        h * s,
        w * s,
        h * s
    );
    let _ = writeln!(out, r##"<rect x="0" y="0" width="{}" height="{}" fill="#ffffff" stroke="none"/>"##, w * s, h * s);

    let (umax, vmax) = (c.umax(), c.vmax());
    let _ = writeln!(out, r##"<g id="tiling" stroke="#c8c8c8" stroke-width="0.5" fill="none">"##);
    for u in 0..=umax {
        let _ = writeln!(out, r#"<line x1="{}" y1="{}" x2="{}" y2="{}"/>"#, x(u), y(0), x(u), y(vmax));
    }
    for v in 0..=vmax {
        let _ = writeln!(out, r#"<line x1="{}" y1="{}" x2="{}" y2="{}"/>"#, x(0), y(v), x(umax), y(v));
    }
    for row in 0..c.height() {
        for col in 0..c.width() {
            let (u0, v0) = (2 * col, 2 * row);
            let _ = writeln!(out, r#"<line x1="{}" y1="{}" x2="{}" y2="{}"/>"#, x(u0), y(v0), x(u0 + 2), y(v0 + 2));
            let _ = writeln!(out, r#"<line x1="{}" y1="{}" x2="{}" y2="{}"/>"#, x(u0), y(v0 + 2), x(u0 + 2), y(v0));
        }
    }
    let _ = writeln!(out, "</g>");

    let _ = writeln!(out, r#"<g id="creases" stroke-width="2" stroke-linecap="round" fill="none">"#);
    for cr in c.creases() {
        if let Some(color) = crease_color(cr.angle) {
            let _ = writeln!(
                out,
                r#"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="{}" data-angle="{}"/>"#,
                x(cr.a.u),
                y(cr.a.v),
                x(cr.b.u),
                y(cr.b.v),
                color,
                cr.angle.degrees()
            );
        }
    }
    let _ = writeln!(out, "</g>");
    let _ = writeln!(
        out,
        r##"<rect x="0" y="0" width="{}" height="{}" fill="none" stroke="#000000" stroke-width="1"/>"##,
        w * s,
        h * s
    );
    let _ = writeln!(out, "</svg>");
    out
}

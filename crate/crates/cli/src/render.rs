//! Schematic SVG of the two rows of letter intervals.

use std::fmt::Write as _;

use linvol::involution::LinearInvolution;
use linvol::word::SignedLetter;

const WIDTH: f64 = 800.0;
const MARGIN: f64 = 40.0;
const ROW_HEIGHT: f64 = 36.0;
const ROW_GAP: f64 = 48.0;

/// Top row above, bottom row below, widths proportional to lengths. Flipped
/// letters are drawn hatched.
pub fn svg(t: &LinearInvolution) -> String {
    let total = t.interval_length().to_f64();
    let scale = (WIDTH - 2.0 * MARGIN) / total;
    let height = 2.0 * MARGIN + 2.0 * ROW_HEIGHT + ROW_GAP;
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{height}" viewBox="0 0 {WIDTH} {height}" font-family="serif" font-size="16">"#
    );
    out.push_str(concat!(
        r#"<defs><pattern id="flip" width="6" height="6" patternUnits="userSpaceOnUse" patternTransform="rotate(45)">"#,
        r#"<line x1="0" y1="0" x2="0" y2="6" stroke="gray" stroke-width="2"/></pattern></defs>"#,
        "\n"
    ));
    for x in SignedLetter::all(t.k()) {
        let iv = t.interval(x);
        let x0 = MARGIN + iv.lo.to_f64() * scale;
        let w = (iv.hi.to_f64() - iv.lo.to_f64()) * scale;
        let y = MARGIN + f64::from(iv.comp) * (ROW_HEIGHT + ROW_GAP);
        let fill = if t.is_flipped(x) { "url(#flip)" } else { "none" };
        let _ = writeln!(
            out,
            r#"<rect x="{x0:.3}" y="{y:.3}" width="{w:.3}" height="{ROW_HEIGHT}" fill="{fill}" stroke="black"/>"#
        );
        let label = if x.positive { x.to_string() } else { format!("{}⁻¹", SignedLetter::pos(x.base)) };
        let _ = writeln!(
            out,
            r#"<text x="{:.3}" y="{:.3}" text-anchor="middle" dominant-baseline="middle">{label}</text>"#,
            x0 + w / 2.0,
            y + ROW_HEIGHT / 2.0
        );
    }
    out.push_str("</svg>\n");
    out
}

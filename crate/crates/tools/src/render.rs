//! SVG picture of a snapshot: one dot per point, optional rings around the
//! origin and the fifth roots of unity.

use std::fmt::Write;

use cyclo5::{CycInt, DistClass, Snapshot};

#[derive(Clone, Debug, PartialEq)]
pub struct RenderOptions {
    /// Side of the square canvas; the disc of radius R fills it.
    pub canvas: u32,
    pub dot_radius: f64,
    pub highlight_radius: f64,
    /// Ring 0 and ζᵏ, k = 0..4.
    pub highlight_roots: bool,
    /// Colour dots by nearest-neighbour class.
    pub color_classes: bool,
}

impl Default for RenderOptions {
    fn default() -> Self {
        Self {
            canvas: 1000,
            dot_radius: 3.0,
            highlight_radius: 10.0,
            highlight_roots: false,
            color_classes: false,
        }
    }
}

fn fill(class: DistClass) -> &'static str {
    match class {
        DistClass::Short => "#d62728",
        DistClass::Long => "#1f77b4",
        DistClass::Other => "#ff7f0e",
        DistClass::Unknown => "#7f7f7f",
    }
}

/// Points ringed when highlighting: 0, then ζ⁰ … ζ⁴.
pub fn highlighted_points() -> [CycInt; 6] {
    let mut out = [CycInt::ZERO; 6];
    for (k, slot) in out.iter_mut().skip(1).enumerate() {
        *slot = CycInt::zeta_pow(k as i64);
    }
    out
}

/// Maps a physical position to canvas coordinates (y flipped).
pub fn to_canvas(snapshot: &Snapshot, canvas: u32, x: f64, y: f64) -> (f64, f64) {
    let r2 = *snapshot.radius_sq.numer() as f64 / *snapshot.radius_sq.denom() as f64;
    let half = canvas as f64 / 2.0;
    let scale = if r2 > 0.0 { half / r2.sqrt() } else { half };
    (half + x * scale, half - y * scale)
}

pub fn render_svg(snapshot: &Snapshot, opts: &RenderOptions) -> String {
    let c = opts.canvas;
    let mut svg = String::new();
    // writing to a String cannot fail
    let _ = writeln!(svg, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{c}" height="{c}" viewBox="0 0 {c} {c}">"#
    );
    let _ = writeln!(svg, r#"<rect width="{c}" height="{c}" fill="white"/>"#);
    let _ = writeln!(svg, r#"<g id="points">"#);
    for p in &snapshot.points {
        let (cx, cy) = to_canvas(snapshot, c, p.x, p.y);
        let colour = if opts.color_classes { fill(p.dist_class) } else { "black" };
        let _ = writeln!(
            svg,
            r#"<circle class="pt {}" data-a="{}" cx="{cx:.6}" cy="{cy:.6}" r="{}" fill="{colour}"/>"#,
            p.dist_class,
            coords_attr(p.z),
            opts.dot_radius
        );
    }
    let _ = writeln!(svg, "</g>");
    if opts.highlight_roots {
        let _ = writeln!(svg, r#"<g id="highlights">"#);
        for z in highlighted_points() {
            let Some(p) = snapshot.find(z) else {
                continue;
            };
            let (cx, cy) = to_canvas(snapshot, c, p.x, p.y);
            let _ = writeln!(
                svg,
                r#"<circle class="highlight" data-a="{}" cx="{cx:.6}" cy="{cy:.6}" r="{}" fill="none" stroke="black" stroke-width="1.5"/>"#,
                coords_attr(z),
                opts.highlight_radius
            );
        }
        let _ = writeln!(svg, "</g>");
    }
    let _ = writeln!(svg, "</svg>");
    svg
}

fn coords_attr(z: CycInt) -> String {
    let [a0, a1, a2, a3] = z.coords();
    format!("{a0},{a1},{a2},{a3}")
}

//! Ford circles as a standalone SVG. Gray circles sit on 1-rationals, white
//! ones on ∞-rationals; the principal convergents of the input are outlined
//! in red and the input itself is a dashed line.

use std::fmt::Write;

use num_integer::Integer;

use oocf::convergents::convergent_table;
use oocf::oocf::expand;
use oocf::{Parity, Rational, Real};

const WIDTH: f64 = 1000.0;
const MARGIN: f64 = 20.0;

pub struct Drawing {
    pub svg: String,
    pub circles: usize,
    pub highlighted: Vec<String>,
}

fn fill(r: &Rational) -> &'static str {
    match r.classify() {
        Parity::OneRational => "#bdbdbd",
        Parity::InfRational => "#ffffff",
    }
}

fn circle(out: &mut String, r: &Rational, stroke: &str, width: f64) {
    let q = r.den().to_string().parse::<f64>().unwrap_or(f64::INFINITY);
    let radius = WIDTH / (2.0 * q * q);
    let cx = MARGIN + WIDTH * r.to_f64();
    let cy = MARGIN + WIDTH / 2.0 - radius;
    let _ = writeln!(
        out,
        r#"<circle cx="{cx:.4}" cy="{cy:.4}" r="{radius:.4}" fill="{}" stroke="{stroke}" stroke-width="{width}"/>"#,
        fill(r)
    );
}

pub fn render(x: &Real, n: usize, den_max: u64) -> Result<Drawing, String> {
    if den_max == 0 {
        return Err("--den-max must be at least 1".into());
    }
    let digits = expand(x, n).map_err(|e| e.to_string())?.take(n);
    let convergents: Vec<Rational> = convergent_table(&digits)
        .iter()
        .skip(1)
        .map(|r| r.principal())
        .collect();

    let (w, h) = (WIDTH + 2.0 * MARGIN, WIDTH / 2.0 + 2.0 * MARGIN);
    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#
    );
    let _ = writeln!(
        svg,
        r#"<defs><clipPath id="unit"><rect x="{MARGIN}" y="0" width="{WIDTH}" height="{h}"/></clipPath></defs>"#
    );
    let _ = writeln!(svg, r##"<rect width="{w}" height="{h}" fill="#ffffff"/>"##);
    svg.push_str("<g clip-path=\"url(#unit)\">\n");
    let mut circles = 0;
    for q in 1..=den_max {
        for p in 0..=q {
            if p.gcd(&q) == 1 {
                circle(&mut svg, &Rational::new(p, q).unwrap(), "#000000", 1.0);
                circles += 1;
            }
        }
    }
    for r in &convergents {
        circle(&mut svg, r, "#d62828", 2.0);
    }
    svg.push_str("</g>\n");
    let base = MARGIN + WIDTH / 2.0;
    let _ = writeln!(
        svg,
        r##"<line x1="{MARGIN}" y1="{base}" x2="{}" y2="{base}" stroke="#000000" stroke-width="1"/>"##,
        MARGIN + WIDTH
    );
    let xp = MARGIN + WIDTH * x.to_f64();
    let _ = writeln!(
        svg,
        r##"<line x1="{xp:.4}" y1="{MARGIN}" x2="{xp:.4}" y2="{base}" stroke="#1d3557" stroke-width="1" stroke-dasharray="4 3"/>"##
    );
    svg.push_str("</svg>\n");
    Ok(Drawing {
        svg,
        circles,
        highlighted: convergents.iter().map(|r| r.to_string()).collect(),
    })
}

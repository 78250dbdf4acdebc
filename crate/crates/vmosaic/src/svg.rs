//! Static SVG drawing of a virtual mosaic.
//!
//! Each crossing tile draws its over-strand whole and its under-strand as
//! two segments of class `under` separated by a gap. Every boundary slot
//! gets a tick and the name of its label, as in the text form.

use std::fmt::Write as _;

use vmosaic_core::tiles::slot_cell;
use vmosaic_core::{Dir, VirtualMosaic};

use crate::text::label_name;

const CELL: i32 = 60;
const MARGIN: i32 = 30;
const GAP: i32 = 9;

fn midpoint(x: i32, y: i32, d: Dir) -> (i32, i32) {
    let h = CELL / 2;
    match d {
        Dir::N => (x + h, y),
        Dir::E => (x + CELL, y + h),
        Dir::S => (x + h, y + CELL),
        Dir::W => (x, y + h),
    }
}

/// Corner of the cell shared by edges `a` and `b`.
fn corner(x: i32, y: i32, a: Dir, b: Dir) -> (i32, i32) {
    let has = |d| a == d || b == d;
    (if has(Dir::E) { x + CELL } else { x }, if has(Dir::S) { y + CELL } else { y })
}

fn draw_tile(svg: &mut String, vm: &VirtualMosaic, r: usize, c: usize) {
    let tile = vm.grid().get(r, c);
    let (x, y) = (MARGIN + c as i32 * CELL, MARGIN + r as i32 * CELL);
    let conn = tile.connections();
    for (k, &(a, b)) in conn.arcs.iter().enumerate() {
        let (p, q) = (midpoint(x, y, a), midpoint(x, y, b));
        if a.opposite() == b {
            if conn.over.is_some_and(|o| o != k) {
                let (dx, dy) = ((q.0 - p.0).signum(), (q.1 - p.1).signum());
                let (cx, cy) = (x + CELL / 2, y + CELL / 2);
                for (from, to) in [(p, (cx - GAP * dx, cy - GAP * dy)), (q, (cx + GAP * dx, cy + GAP * dy))] {
                    let _ = writeln!(
                        svg,
                        r#"<line class="under" x1="{}" y1="{}" x2="{}" y2="{}"/>"#,
                        from.0, from.1, to.0, to.1
                    );
                }
            } else {
                let _ = writeln!(svg, r#"<line class="strand" x1="{}" y1="{}" x2="{}" y2="{}"/>"#, p.0, p.1, q.0, q.1);
            }
        } else {
            let o = corner(x, y, a, b);
            let cross = (p.0 - o.0) * (q.1 - o.1) - (p.1 - o.1) * (q.0 - o.0);
            let sweep = i32::from(cross > 0);
            let rad = CELL / 2;
            let _ = writeln!(
                svg,
                r#"<path class="strand" d="M {} {} A {rad} {rad} 0 0 {sweep} {} {}"/>"#,
                p.0, p.1, q.0, q.1
            );
        }
    }
}

fn draw_slot(svg: &mut String, vm: &VirtualMosaic, s: usize, name: &str) {
    let n = vm.n();
    let (r, c, d) = slot_cell(n, s);
    let (x, y) = (MARGIN + c as i32 * CELL, MARGIN + r as i32 * CELL);
    let (mx, my) = midpoint(x, y, d);
    let (ox, oy) = match d {
        Dir::N => (0, -1),
        Dir::E => (1, 0),
        Dir::S => (0, 1),
        Dir::W => (-1, 0),
    };
    let _ = writeln!(svg, r#"<line class="tick" x1="{mx}" y1="{my}" x2="{}" y2="{}"/>"#, mx + 6 * ox, my + 6 * oy);
    let _ = writeln!(
        svg,
        r#"<text class="label" x="{}" y="{}" data-slot="{s}">{name}</text>"#,
        mx + 16 * ox,
        my + 16 * oy + 4
    );
}

/// Render a mosaic as a standalone SVG document.
pub fn render_svg(vm: &VirtualMosaic) -> String {
    let n = vm.n() as i32;
    let side = 2 * MARGIN + n * CELL;
    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{side}" height="{side}" viewBox="0 0 {side} {side}">"#
    );
    svg.push_str(
        "<style>.cell{fill:none;stroke:#ccc;stroke-width:1}\
         .strand,.under{fill:none;stroke:#000;stroke-width:3;stroke-linecap:butt}\
         .tick{stroke:#888;stroke-width:1}\
         .label{font-family:sans-serif;font-size:11px;text-anchor:middle;fill:#333}</style>\n",
    );
    for r in 0..vm.n() {
        for c in 0..vm.n() {
            let (x, y) = (MARGIN + c as i32 * CELL, MARGIN + r as i32 * CELL);
            let _ = writeln!(
                svg,
                r#"<rect class="cell" x="{x}" y="{y}" width="{CELL}" height="{CELL}" data-tile="{}"/>"#,
                vm.grid().get(r, c)
            );
        }
    }
    for r in 0..vm.n() {
        for c in 0..vm.n() {
            draw_tile(&mut svg, vm, r, c);
        }
    }
    let pairs = vm.pairing().pairs();
    for (k, &(a, b)) in pairs.iter().enumerate() {
        let name = label_name(k);
        draw_slot(&mut svg, vm, a, &name);
        draw_slot(&mut svg, vm, b, &name);
    }
    svg.push_str("</svg>\n");
    svg
}

//! Deterministic two-row drawings of linkings.
//!
//! Both renderers place the left object on the top row and the right object
//! on the bottom row. Binary links are drawn as plain arcs or strokes;
//! links with any other arity get an explicit node with an edge to each
//! foot. Loops are not attached to any vertex, so they appear as a detached
//! circle with a count badge. Identical inputs produce byte-identical
//! output.

use std::fmt::Write as _;

use crate::linking::{Link, Linking};

const COL_WIDTH: usize = 4;

fn vertex_name(set: &crate::irel::VertexSet, index: usize) -> String {
    set.label(index)
        .map(|s| s.to_string())
        .unwrap_or_else(|| index.to_string())
}

/// Character-grid rendering. One routing row per link: feet drop from the
/// top row or rise from the bottom row onto the link's horizontal bus.
pub fn render_ascii(linking: &Linking) -> String {
    let nx = linking.left().size();
    let ny = linking.right().size();
    if nx == 0 && ny == 0 && linking.link_count() == 0 {
        return if linking.loops() > 0 {
            format!("({} loops)\n", linking.loops())
        } else {
            "(empty linking)\n".to_string()
        };
    }

    let levels = linking.link_count();
    let height = levels + 2;
    let width = COL_WIDTH * nx.max(ny).max(1);
    let mut grid = vec![vec![' '; width]; height];

    let put = |grid: &mut Vec<Vec<char>>, row: usize, col: usize, c: char| {
        let cell = &mut grid[row][col];
        *cell = match (*cell, c) {
            (' ', c) => c,
            ('|', '-') | ('-', '|') => '+',
            ('+', _) | (_, '+') => '+',
            (old, new) if old == new => old,
            (_, new) => new,
        };
    };

    for (level, link) in linking.links().iter().enumerate() {
        let bus_row = level + 1;
        let top_cols: Vec<usize> = link.left().iter().map(|&i| i * COL_WIDTH).collect();
        let bottom_cols: Vec<usize> = link.right().iter().map(|&j| j * COL_WIDTH).collect();
        let all_cols: Vec<usize> = top_cols.iter().chain(&bottom_cols).copied().collect();
        let lo = *all_cols.iter().min().expect("links have feet");
        let hi = *all_cols.iter().max().expect("links have feet");
        if lo != hi {
            for col in lo..=hi {
                put(&mut grid, bus_row, col, '-');
            }
        }
        for &col in &top_cols {
            for row in 1..=bus_row {
                put(&mut grid, row, col, '|');
            }
        }
        for &col in &bottom_cols {
            for row in bus_row..height - 1 {
                put(&mut grid, row, col, '|');
            }
        }
        if !link.is_binary() {
            let mid = (lo + hi) / 2;
            put(&mut grid, bus_row, mid, 'o');
        }
    }

    let mut out = String::new();
    let label_row = |out: &mut String, set: &crate::irel::VertexSet| {
        if set.is_empty() {
            return;
        }
        let mut row = vec![' '; width];
        for i in set.indices() {
            for (offset, c) in vertex_name(set, i).chars().enumerate() {
                if i * COL_WIDTH + offset < width {
                    row[i * COL_WIDTH + offset] = c;
                }
            }
        }
        out.push_str(String::from_iter(row).trim_end());
        out.push('\n');
    };

    label_row(&mut out, linking.left());
    for row in &grid[1..height - 1] {
        out.push_str(String::from_iter(row.iter()).trim_end());
        out.push('\n');
    }
    label_row(&mut out, linking.right());
    if linking.loops() > 0 {
        let _ = writeln!(out, "({} loops)", linking.loops());
    }
    out
}

const SVG_SPACING: i64 = 40;
const SVG_MARGIN: i64 = 30;
const TOP_Y: i64 = 50;
const BOTTOM_Y: i64 = 190;
const MID_Y: i64 = 120;

fn svg_x(index: usize) -> i64 {
    SVG_MARGIN + index as i64 * SVG_SPACING
}

fn link_edge(path: &mut String, from: (i64, i64), to: (i64, i64)) {
    let _ = write!(
        path,
        r#"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="black" fill="none"/>"#,
        from.0, from.1, to.0, to.1
    );
    path.push('\n');
}

fn binary_arc(out: &mut String, link: &Link) {
    let left: Vec<i64> = link.left().iter().map(|&i| svg_x(i)).collect();
    let right: Vec<i64> = link.right().iter().map(|&j| svg_x(j)).collect();
    match (left.as_slice(), right.as_slice()) {
        ([x1], [x2]) => {
            // Through strand: a gentle S-curve top to bottom.
            let _ = write!(
                out,
                r#"<path d="M {x1} {TOP_Y} C {x1} {MID_Y}, {x2} {MID_Y}, {x2} {BOTTOM_Y}" stroke="black" fill="none"/>"#
            );
            out.push('\n');
        }
        ([x1, x2], []) => {
            let depth = TOP_Y + (x2 - x1).abs() / 2 + 20;
            let _ = write!(
                out,
                r#"<path d="M {x1} {TOP_Y} C {x1} {depth}, {x2} {depth}, {x2} {TOP_Y}" stroke="black" fill="none"/>"#
            );
            out.push('\n');
        }
        ([], [x1, x2]) => {
            let depth = BOTTOM_Y - (x2 - x1).abs() / 2 - 20;
            let _ = write!(
                out,
                r#"<path d="M {x1} {BOTTOM_Y} C {x1} {depth}, {x2} {depth}, {x2} {BOTTOM_Y}" stroke="black" fill="none"/>"#
            );
            out.push('\n');
        }
        _ => unreachable!("binary links have exactly two feet"),
    }
}

/// SVG rendering: vertex dots with labels, arcs for binary links, explicit
/// link nodes otherwise, and a loop badge on the right.
pub fn render_svg(linking: &Linking) -> String {
    let nx = linking.left().size();
    let ny = linking.right().size();
    let columns = nx.max(ny).max(1);
    let width = 2 * SVG_MARGIN
        + (columns as i64 - 1).max(0) * SVG_SPACING
        + if linking.loops() > 0 { 60 } else { 0 };
    let height = BOTTOM_Y + 50;

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
    );

    for link in linking.links() {
        if link.is_binary() {
            binary_arc(&mut out, link);
        } else {
            let feet: Vec<(i64, i64)> = link
                .left()
                .iter()
                .map(|&i| (svg_x(i), TOP_Y))
                .chain(link.right().iter().map(|&j| (svg_x(j), BOTTOM_Y)))
                .collect();
            let cx = feet.iter().map(|&(x, _)| x).sum::<i64>() / feet.len() as i64;
            for &foot in &feet {
                link_edge(&mut out, (cx, MID_Y), foot);
            }
            let _ = writeln!(
                out,
                r#"<circle cx="{cx}" cy="{MID_Y}" r="6" fill="white" stroke="black"/>"#
            );
        }
    }

    for i in 0..nx {
        let x = svg_x(i);
        let _ = writeln!(out, r#"<circle cx="{x}" cy="{TOP_Y}" r="3" fill="black"/>"#);
        let _ = writeln!(
            out,
            r#"<text x="{x}" y="{}" font-family="monospace" font-size="12" text-anchor="middle">{}</text>"#,
            TOP_Y - 12,
            vertex_name(linking.left(), i)
        );
    }
    for j in 0..ny {
        let x = svg_x(j);
        let _ = writeln!(
            out,
            r#"<circle cx="{x}" cy="{BOTTOM_Y}" r="3" fill="black"/>"#
        );
        let _ = writeln!(
            out,
            r#"<text x="{x}" y="{}" font-family="monospace" font-size="12" text-anchor="middle">{}</text>"#,
            BOTTOM_Y + 22,
            vertex_name(linking.right(), j)
        );
    }

    if linking.loops() > 0 {
        let x = width - 30;
        let _ = writeln!(
            out,
            r#"<circle cx="{x}" cy="{MID_Y}" r="10" fill="none" stroke="black"/>"#
        );
        let _ = writeln!(
            out,
            r#"<text x="{x}" y="{}" font-family="monospace" font-size="12" text-anchor="middle">x{}</text>"#,
            MID_Y + 28,
            linking.loops()
        );
    }

    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::irel::VertexSet;
    use crate::linking::Link;

    #[test]
    fn identity_renders_as_vertical_strokes() {
        let id = Linking::identity(&VertexSet::new(3));
        let expected = "\
0   1   2
|   |   |
|   |   |
|   |   |
0   1   2
";
        assert_eq!(render_ascii(&id), expected);
    }

    #[test]
    fn loops_only_renders_a_badge() {
        let l = Linking::loops_only(2);
        assert_eq!(render_ascii(&l), "(2 loops)\n");
        assert_eq!(render_ascii(&Linking::loops_only(0)), "(empty linking)\n");
    }

    #[test]
    fn cap_renders_as_a_bracket() {
        let l = Linking::new(
            VertexSet::new(2),
            VertexSet::new(0),
            vec![Link::new([0, 1], []).unwrap()],
            0,
        )
        .unwrap();
        let expected = "\
0   1
+---+
";
        assert_eq!(render_ascii(&l), expected);
    }

    #[test]
    fn rendering_is_deterministic() {
        let l = Linking::new(
            VertexSet::new(3),
            VertexSet::new(2),
            vec![Link::new([0, 2], [1]).unwrap(), Link::new([1], []).unwrap()],
            1,
        )
        .unwrap();
        assert_eq!(render_ascii(&l), render_ascii(&l));
        assert_eq!(render_svg(&l), render_svg(&l));
    }

    #[test]
    fn svg_mentions_loops_and_nodes() {
        let l = Linking::new(
            VertexSet::new(1),
            VertexSet::new(0),
            vec![Link::new([0], []).unwrap()],
            2,
        )
        .unwrap();
        let svg = render_svg(&l);
        assert!(svg.contains("x2"));
        assert!(svg.contains("circle"));
        assert!(svg.starts_with("<svg"));
        assert!(svg.trim_end().ends_with("</svg>"));
    }

    #[test]
    fn labels_are_used_when_present() {
        let left = VertexSet::with_labels(vec!["p".into(), "q".into()]).unwrap();
        let l = Linking::identity(&left);
        let ascii = render_ascii(&l);
        assert!(ascii.starts_with("p   q"));
        let svg = render_svg(&l);
        assert!(svg.contains(">p</text>"));
    }
}

//! Staircase-style pictures of a complex in the `(i, j)` plane.
//!
//! Each generator is drawn once, at a U-translate chosen so that arrows
//! connect dots: walking the arrow graph, the target of `x -> U^n y` is
//! placed `n` steps further along the diagonal than `x`. Each connected
//! piece is then shifted so its leftmost dot sits on `i = 0`.

use std::collections::{BTreeMap, VecDeque};
use std::fmt::Write as _;

use crate::cfk::CfkComplex;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dot {
    pub name: String,
    pub i: i64,
    pub j: i64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SegmentKind {
    Horizontal,
    Vertical,
    /// The arrow graph has a cycle that no choice of translates makes
    /// axis-parallel; the arrow is drawn dot to dot anyway.
    Skew,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Segment {
    pub from: (i64, i64),
    pub to: (i64, i64),
    pub kind: SegmentKind,
    pub source: String,
    pub target: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Layout {
    pub dots: Vec<Dot>,
    pub segments: Vec<Segment>,
}

pub fn layout(c: &CfkComplex) -> Layout {
    let c = c.canonical();
    let n = c.len();
    let mut neighbours: Vec<Vec<(usize, i64)>> = vec![Vec::new(); n];
    for a in c.arrows() {
        neighbours[a.source].push((a.target, a.u_exp));
        neighbours[a.target].push((a.source, -a.u_exp));
    }
    // roots in descending Alexander grading, so staircases start top left
    let mut roots: Vec<usize> = (0..n).collect();
    roots.sort_by_key(|&x| (-c.generator(x).alexander, x));
    let mut shift: Vec<Option<i64>> = vec![None; n];
    for root in roots {
        if shift[root].is_some() {
            continue;
        }
        let mut component = vec![root];
        shift[root] = Some(0);
        let mut queue = VecDeque::from([root]);
        while let Some(x) = queue.pop_front() {
            let kx = shift[x].expect("queued generators are placed");
            for &(y, n) in &neighbours[x] {
                if shift[y].is_none() {
                    shift[y] = Some(kx + n);
                    component.push(y);
                    queue.push_back(y);
                }
            }
        }
        let top = component
            .iter()
            .map(|&x| shift[x].unwrap())
            .max()
            .unwrap_or(0);
        for &x in &component {
            shift[x] = shift[x].map(|k| k - top);
        }
    }
    let pos = |x: usize| {
        let k = shift[x].expect("every generator is placed");
        (-k, c.generator(x).alexander - k)
    };
    let dots = (0..n)
        .map(|x| {
            let (i, j) = pos(x);
            Dot {
                name: c.generator(x).name.clone(),
                i,
                j,
            }
        })
        .collect();
    let segments = c
        .arrows()
        .map(|a| {
            let (from, to) = (pos(a.source), pos(a.target));
            let kind = if from.1 == to.1 {
                SegmentKind::Horizontal
            } else if from.0 == to.0 {
                SegmentKind::Vertical
            } else {
                SegmentKind::Skew
            };
            Segment {
                from,
                to,
                kind,
                source: c.generator(a.source).name.clone(),
                target: c.generator(a.target).name.clone(),
            }
        })
        .collect();
    Layout { dots, segments }
}

fn bounds(l: &Layout) -> (i64, i64, i64, i64) {
    let is = l.dots.iter().map(|d| d.i);
    let js = l.dots.iter().map(|d| d.j);
    (
        is.clone().min().unwrap_or(0),
        is.max().unwrap_or(0),
        js.clone().min().unwrap_or(0),
        js.max().unwrap_or(0),
    )
}

const COL: i64 = 4;
const ROW: i64 = 2;

/// Character grid: `o` for dots, `-` and `|` for arrows, followed by a
/// legend listing positions and arrows.
pub fn render_ascii(l: &Layout) -> String {
    let (i0, i1, j0, j1) = bounds(l);
    let width = ((i1 - i0) * COL + 1) as usize;
    let height = ((j1 - j0) * ROW + 1) as usize;
    let mut grid = vec![vec![' '; width]; height];
    let cell = |i: i64, j: i64| (((j1 - j) * ROW) as usize, ((i - i0) * COL) as usize);
    for s in &l.segments {
        match s.kind {
            SegmentKind::Horizontal => {
                let (r, c0) = cell(s.from.0.min(s.to.0), s.from.1);
                let (_, c1) = cell(s.from.0.max(s.to.0), s.from.1);
                for ch in &mut grid[r][c0..=c1] {
                    *ch = '-';
                }
            }
            SegmentKind::Vertical => {
                let (r0, c) = cell(s.from.0, s.from.1.max(s.to.1));
                let (r1, _) = cell(s.from.0, s.from.1.min(s.to.1));
                for row in &mut grid[r0..=r1] {
                    row[c] = '|';
                }
            }
            SegmentKind::Skew => {}
        }
    }
    for d in &l.dots {
        let (r, c) = cell(d.i, d.j);
        grid[r][c] = 'o';
    }
    let mut out = String::new();
    for row in grid {
        let line: String = row.into_iter().collect();
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out.push('\n');
    let mut by_pos: BTreeMap<(i64, i64), Vec<&str>> = BTreeMap::new();
    for d in &l.dots {
        by_pos.entry((-d.j, d.i)).or_default().push(&d.name);
    }
    for ((negj, i), names) in by_pos {
        writeln!(out, "({i},{}) {}", -negj, names.join(", ")).unwrap();
    }
    for s in &l.segments {
        let tag = match s.kind {
            SegmentKind::Horizontal => "horizontal",
            SegmentKind::Vertical => "vertical",
            SegmentKind::Skew => "skew",
        };
        writeln!(out, "{} -> {} {tag}", s.source, s.target).unwrap();
    }
    out
}

pub const SVG_PITCH: i64 = 24;

/// SVG with a fixed lattice pitch; lattice point `(i, j)` is drawn at
/// `(24 i, 24 j)` in a group whose `y` axis points up.
pub fn render_svg(l: &Layout) -> String {
    let (i0, i1, j0, j1) = bounds(l);
    let margin = SVG_PITCH;
    let x_min = i0 * SVG_PITCH - margin;
    let y_min = j0 * SVG_PITCH - margin;
    let w = (i1 - i0) * SVG_PITCH + 2 * margin;
    let h = (j1 - j0) * SVG_PITCH + 2 * margin;
    let mut out = String::new();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="{x_min} {} {w} {h}">"#,
        -(y_min + h)
    )
    .unwrap();
    out.push_str("<g transform=\"scale(1,-1)\">\n");
    for s in &l.segments {
        let dash = if s.kind == SegmentKind::Skew {
            r#" stroke-dasharray="4 2""#
        } else {
            ""
        };
        writeln!(
            out,
            r#"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="black" stroke-width="2"{dash}><title>{} -&gt; {}</title></line>"#,
            s.from.0 * SVG_PITCH,
            s.from.1 * SVG_PITCH,
            s.to.0 * SVG_PITCH,
            s.to.1 * SVG_PITCH,
            xml_escape(&s.source),
            xml_escape(&s.target)
        )
        .unwrap();
    }
    for d in &l.dots {
        writeln!(
            out,
            r#"<circle cx="{}" cy="{}" r="4" fill="black"><title>{}</title></circle>"#,
            d.i * SVG_PITCH,
            d.j * SVG_PITCH,
            xml_escape(&d.name)
        )
        .unwrap();
    }
    out.push_str("</g>\n</svg>\n");
    out
}

fn xml_escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

//! SVG and TikZ drawings of tilings, plabic graphs and weaves.
//!
//! Every drawn item carries a class (`face white`, `vertex black`, `tick`, …)
//! so that documents can be checked structurally. Coordinates are computed
//! here and nowhere else.

use std::f64::consts::TAU;
use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::io::Artifact;
use crate::plabic::{build_tiling, Color, PlabicGraph, PlabicTiling, VertexKind};
use crate::subset::KSubset;
use crate::weave::{WeaveGraph, WeaveVertex};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Svg,
    Tikz,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "svg" => Ok(Format::Svg),
            "tikz" | "tex" => Ok(Format::Tikz),
            other => Err(Error::Unsupported(format!("render format {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RenderOptions {
    /// Side of the square viewport, in SVG user units (TikZ: tenths of a cm).
    pub scale: f64,
    /// Stroke colors for weave layers `1, 2, …`, as `#rrggbb`; cycled.
    pub layer_colors: Vec<String>,
}

impl Default for RenderOptions {
    fn default() -> Self {
        RenderOptions {
            scale: 400.0,
            layer_colors: ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"]
                .map(String::from)
                .to_vec(),
        }
    }
}

type Pt = (f64, f64);

#[derive(Debug, Clone)]
enum Item {
    Polygon { pts: Vec<Pt>, class: String, fill: String },
    Segment { a: Pt, b: Pt, class: String, stroke: String, width: f64 },
    Disk { c: Pt, r: f64, class: String, fill: String },
    Label { at: Pt, text: String, class: String },
}

#[derive(Debug, Default)]
struct Scene {
    items: Vec<Item>,
}

impl Scene {
    fn polygon(&mut self, pts: Vec<Pt>, class: &str, fill: &str) {
        self.items.push(Item::Polygon { pts, class: class.into(), fill: fill.into() });
    }

    fn segment(&mut self, a: Pt, b: Pt, class: &str, stroke: &str, width: f64) {
        self.items.push(Item::Segment { a, b, class: class.into(), stroke: stroke.into(), width });
    }

    fn disk(&mut self, c: Pt, r: f64, class: &str, fill: &str) {
        self.items.push(Item::Disk { c, r, class: class.into(), fill: fill.into() });
    }

    fn label(&mut self, at: Pt, text: String, class: &str) {
        self.items.push(Item::Label { at, text, class: class.into() });
    }

    fn points(&self) -> impl Iterator<Item = Pt> + '_ {
        self.items.iter().flat_map(|it| match it {
            Item::Polygon { pts, .. } => pts.clone(),
            Item::Segment { a, b, .. } => vec![*a, *b],
            Item::Disk { c, .. } => vec![*c],
            Item::Label { at, .. } => vec![*at],
        })
    }
}

/// Fixed-precision number with no negative zero.
fn num(x: f64) -> String {
    let s = format!("{x:.3}");
    if s.trim_start_matches('-').chars().all(|c| c == '0' || c == '.') {
        "0.000".into()
    } else {
        s
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

/// Maps math coordinates into a `size × size` box with a margin, y up.
struct Viewport {
    cx: f64,
    cy: f64,
    s: f64,
    size: f64,
}

impl Viewport {
    fn fit(scene: &Scene, size: f64) -> Self {
        let (mut x0, mut y0, mut x1, mut y1) = (f64::MAX, f64::MAX, f64::MIN, f64::MIN);
        for (x, y) in scene.points() {
            x0 = x0.min(x);
            y0 = y0.min(y);
            x1 = x1.max(x);
            y1 = y1.max(y);
        }
        if x0 > x1 {
            (x0, y0, x1, y1) = (-1.0, -1.0, 1.0, 1.0);
        }
        let span = (x1 - x0).max(y1 - y0).max(1e-9);
        Viewport { cx: (x0 + x1) / 2.0, cy: (y0 + y1) / 2.0, s: 0.84 * size / span, size }
    }

    /// SVG coordinates: y grows downward.
    fn svg(&self, (x, y): Pt) -> Pt {
        (self.size / 2.0 + self.s * (x - self.cx), self.size / 2.0 - self.s * (y - self.cy))
    }

    /// TikZ coordinates in cm.
    fn tikz(&self, (x, y): Pt) -> Pt {
        (self.s * (x - self.cx) / 10.0, self.s * (y - self.cy) / 10.0)
    }
}

fn to_svg(scene: &Scene, title: &str, size: f64) -> String {
    let vp = Viewport::fit(scene, size);
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{0}" height="{0}" viewBox="0 0 {0} {0}">"#,
        num(size)
    );
    let _ = writeln!(out, "<title>{}</title>", escape(title));
    for it in &scene.items {
        match it {
            Item::Polygon { pts, class, fill } => {
                let p: Vec<String> = pts.iter().map(|&q| vp.svg(q)).map(|(x, y)| format!("{},{}", num(x), num(y))).collect();
                let _ = writeln!(
                    out,
                    r##"<polygon class="{class}" points="{}" fill="{fill}" stroke="#000000" stroke-width="1"/>"##,
                    p.join(" ")
                );
            }
            Item::Segment { a, b, class, stroke, width } => {
                let ((x1, y1), (x2, y2)) = (vp.svg(*a), vp.svg(*b));
                let _ = writeln!(
                    out,
                    r#"<line class="{class}" x1="{}" y1="{}" x2="{}" y2="{}" stroke="{stroke}" stroke-width="{}"/>"#,
                    num(x1),
                    num(y1),
                    num(x2),
                    num(y2),
                    num(*width)
                );
            }
            Item::Disk { c, r, class, fill } => {
                let (x, y) = vp.svg(*c);
                let _ = writeln!(
                    out,
                    r##"<circle class="{class}" cx="{}" cy="{}" r="{}" fill="{fill}" stroke="#000000"/>"##,
                    num(x),
                    num(y),
                    num(*r)
                );
            }
            Item::Label { at, text, class } => {
                let (x, y) = vp.svg(*at);
                let _ = writeln!(
                    out,
                    r#"<text class="{class}" x="{}" y="{}" font-size="11" text-anchor="middle" dominant-baseline="middle">{}</text>"#,
                    num(x),
                    num(y),
                    escape(text)
                );
            }
        }
    }
    out.push_str("</svg>\n");
    out
}

fn tikz_color(c: &str) -> String {
    match c.strip_prefix('#') {
        Some(hex) if hex.len() == 6 => format!("{{rgb,255:red,{};green,{};blue,{}}}", byte(&hex[0..2]), byte(&hex[2..4]), byte(&hex[4..6])),
        _ => c.to_string(),
    }
}

fn byte(h: &str) -> u8 {
    u8::from_str_radix(h, 16).unwrap_or(0)
}

fn tikz_text(s: &str) -> String {
    s.replace('{', "\\{").replace('}', "\\}").replace('&', "\\&")
}

fn to_tikz(scene: &Scene, title: &str, size: f64) -> String {
    let vp = Viewport::fit(scene, size);
    let pt = |q: Pt| {
        let (x, y) = vp.tikz(q);
        format!("({},{})", num(x), num(y))
    };
    let mut out = String::new();
    let _ = writeln!(out, "% {title}");
    out.push_str("\\begin{tikzpicture}\n");
    for it in &scene.items {
        match it {
            Item::Polygon { pts, class, fill } => {
                let p: Vec<String> = pts.iter().map(|&q| pt(q)).collect();
                let _ = writeln!(out, "\\filldraw[fill={}] {} -- cycle; % {class}", tikz_color(fill), p.join(" -- "));
            }
            Item::Segment { a, b, class, stroke, width } => {
                let _ = writeln!(
                    out,
                    "\\draw[draw={}, line width={}pt] {} -- {}; % {class}",
                    tikz_color(stroke),
                    num(width * 0.75),
                    pt(*a),
                    pt(*b)
                );
            }
            Item::Disk { c, r, class, fill } => {
                let _ = writeln!(out, "\\filldraw[fill={}] {} circle ({}pt); % {class}", tikz_color(fill), pt(*c), num(r * 0.75));
            }
            Item::Label { at, text, class } => {
                let _ = writeln!(out, "\\node[font=\\scriptsize] at {} {{{}}}; % {class}", pt(*at), tikz_text(text));
            }
        }
    }
    out.push_str("\\end{tikzpicture}\n");
    out
}

fn emit(scene: &Scene, title: &str, format: Format, opts: &RenderOptions) -> String {
    match format {
        Format::Svg => to_svg(scene, title, opts.scale),
        Format::Tikz => to_tikz(scene, title, opts.scale),
    }
}

fn subset_text(s: &KSubset) -> String {
    match s.compact() {
        Some(c) if !c.is_empty() => c,
        _ => s.to_string(),
    }
}

const WHITE_FACE: &str = "#f4f4f4";
const BLACK_FACE: &str = "#8c8c8c";

fn fill_of(c: Color) -> &'static str {
    match c {
        Color::White => "#ffffff",
        Color::Black => "#000000",
    }
}

fn color_name(c: Color) -> &'static str {
    match c {
        Color::White => "white",
        Color::Black => "black",
    }
}

fn unit(angle: f64) -> Pt {
    (angle.cos(), angle.sin())
}

/// Marked point `m` sits where `v_m` does.
fn point_angle(m: f64, n: u32) -> f64 {
    TAU * (m - 1.0) / n as f64
}

fn tiling_scene(t: &PlabicTiling) -> Scene {
    let mut sc = Scene::default();
    for f in &t.faces {
        let pts = f.boundary.iter().map(|&v| t.position(v)).collect();
        let fill = if f.color == Color::White { WHITE_FACE } else { BLACK_FACE };
        sc.polygon(pts, &format!("face {}", color_name(f.color)), fill);
    }
    for &(a, b) in &t.edges {
        sc.segment(t.position(a), t.position(b), "edge", "#000000", 1.5);
    }
    for (v, s) in t.vertices.iter().enumerate() {
        let p = t.position(v);
        sc.disk(p, 3.0, "vertex", "#ffffff");
        let (x, y) = p;
        sc.label((x, y + 0.12), subset_text(s), "label");
    }
    sc
}

/// Barycentric embedding with the `fixed` vertices pinned.
fn tutte(nv: usize, edges: &[(usize, usize)], fixed: &[Option<Pt>]) -> Vec<Pt> {
    let mut adj = vec![Vec::new(); nv];
    for &(a, b) in edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    let mut pos: Vec<Pt> = fixed.iter().map(|p| p.unwrap_or((0.0, 0.0))).collect();
    for _ in 0..20_000 {
        let mut delta: f64 = 0.0;
        for v in 0..nv {
            if fixed[v].is_some() || adj[v].is_empty() {
                continue;
            }
            let m = adj[v].len() as f64;
            let (sx, sy) = adj[v].iter().fold((0.0, 0.0), |(x, y), &u| (x + pos[u].0, y + pos[u].1));
            let q = (sx / m, sy / m);
            delta = delta.max((q.0 - pos[v].0).abs() + (q.1 - pos[v].1).abs());
            pos[v] = q;
        }
        if delta < 1e-12 {
            break;
        }
    }
    pos
}

fn graph_positions(g: &PlabicGraph) -> Vec<Pt> {
    let n = g.n();
    let fixed: Vec<Option<Pt>> = g
        .kinds()
        .iter()
        .map(|k| match k {
            VertexKind::Boundary(m) => Some(unit(point_angle(*m as f64, n))),
            VertexKind::Internal(_) => None,
        })
        .collect();
    let edges: Vec<(usize, usize)> = (0..g.num_darts()).filter(|&d| d < g.twin(d)).map(|d| (g.tail(d), g.head(d))).collect();
    tutte(g.num_vertices(), &edges, &fixed)
}

fn graph_scene(g: &PlabicGraph) -> Result<Scene> {
    let pos = graph_positions(g);
    let mut sc = Scene::default();
    let n = g.n();
    let rim: Vec<Pt> = (1..=n).map(|m| unit(point_angle(m as f64, n))).collect();
    for m in 0..n as usize {
        sc.segment(rim[m], rim[(m + 1) % n as usize], "rim", "#999999", 1.0);
    }
    let labeling = g.labeling()?;
    let nd = g.num_darts();
    for lf in labeling.labeled.iter().flatten() {
        let corners: Vec<Pt> = lf
            .walk
            .iter()
            .map(|&x| {
                if x < nd {
                    pos[g.tail(x)]
                } else {
                    let j = ((x - nd) / 2) as u32 + 1;
                    pos[g.marked(j)]
                }
            })
            .collect();
        let c = corners.iter().fold((0.0, 0.0), |(x, y), p| (x + p.0, y + p.1));
        let m = corners.len().max(1) as f64;
        sc.label((c.0 / m, c.1 / m), subset_text(&lf.label), "face-label");
    }
    for d in 0..nd {
        if d < g.twin(d) {
            sc.segment(pos[g.tail(d)], pos[g.head(d)], "edge", "#000000", 1.5);
        }
    }
    for v in 0..g.num_vertices() {
        match g.kind(v) {
            VertexKind::Internal(c) => sc.disk(pos[v], 5.0, &format!("vertex {}", color_name(c)), fill_of(c)),
            VertexKind::Boundary(m) => {
                sc.disk(pos[v], 2.0, "marked", "#000000");
                let (x, y) = pos[v];
                sc.label((1.1 * x, 1.1 * y), m.to_string(), "point-label");
            }
        }
    }
    Ok(sc)
}

fn weave_scene(w: &WeaveGraph, opts: &RenderOptions) -> Scene {
    let n = w.n;
    let k = w.k.max(2);
    let slot_angle = |p: u32, j: u32| point_angle(p as f64 + (j as f64 - 0.5) / (k - 1) as f64 - 0.5, n);
    let fixed: Vec<Option<Pt>> = w
        .vertices
        .iter()
        .map(|v| match v {
            WeaveVertex::Boundary { point, layer } => Some(unit(slot_angle(*point, *layer))),
            _ => None,
        })
        .collect();
    let edges: Vec<(usize, usize)> = (0..w.tail.len()).filter(|&d| d < w.twin[d]).map(|d| (w.tail[d], w.tail[w.twin[d]])).collect();
    let pos = tutte(w.vertices.len(), &edges, &fixed);
    let color = |j: u32| -> String {
        if opts.layer_colors.is_empty() {
            "#000000".into()
        } else {
            opts.layer_colors[(j as usize + opts.layer_colors.len() - 1) % opts.layer_colors.len()].clone()
        }
    };
    let mut sc = Scene::default();
    let segs = 96;
    for i in 0..segs {
        let (a, b) = (TAU * i as f64 / segs as f64, TAU * (i + 1) as f64 / segs as f64);
        sc.segment(unit(a), unit(b), "rim", "#999999", 1.0);
    }
    for p in 1..=n {
        let (x, y) = unit(point_angle(p as f64, n));
        sc.label((1.14 * x, 1.14 * y), p.to_string(), "point-label");
    }
    for d in 0..w.tail.len() {
        if d < w.twin[d] {
            let j = w.layer[d];
            sc.segment(pos[w.tail[d]], pos[w.tail[w.twin[d]]], &format!("edge layer-{j}"), &color(j), 2.0);
        }
    }
    for (v, kind) in w.vertices.iter().enumerate() {
        match kind {
            WeaveVertex::Boundary { point, layer } => {
                let (x, y) = unit(slot_angle(*point, *layer));
                sc.segment((0.97 * x, 0.97 * y), (1.05 * x, 1.05 * y), &format!("tick layer-{layer}"), &color(*layer), 2.0);
            }
            WeaveVertex::Trivalent { layer, .. } => sc.disk(pos[v], 3.0, &format!("trivalent layer-{layer}"), &color(*layer)),
            WeaveVertex::Hexavalent { .. } => sc.disk(pos[v], 4.0, "hexavalent", "#ffffff"),
        }
    }
    sc
}

pub fn render_tiling(t: &PlabicTiling, format: Format, opts: &RenderOptions) -> String {
    emit(&tiling_scene(t), &format!("plabic tiling n={} k={}", t.n, t.k), format, opts)
}

pub fn render_graph(g: &PlabicGraph, format: Format, opts: &RenderOptions) -> Result<String> {
    Ok(emit(&graph_scene(g)?, &format!("plabic graph n={}", g.n()), format, opts))
}

pub fn render_weave(w: &WeaveGraph, format: Format, opts: &RenderOptions) -> String {
    emit(&weave_scene(w, opts), &format!("weave n={} layers={}", w.n, w.num_layers()), format, opts)
}

/// Collections are drawn as their tiling; pipeline reports as their weave,
/// or as the trivalent graph when there is no weave.
pub fn render(artifact: &Artifact, format: Format, opts: &RenderOptions) -> Result<String> {
    match artifact {
        Artifact::Collection(d) => Ok(render_tiling(&build_tiling(d)?, format, opts)),
        Artifact::Tiling(t) => Ok(render_tiling(t, format, opts)),
        Artifact::Graph(g) => render_graph(g, format, opts),
        Artifact::Weave(w) => Ok(render_weave(w, format, opts)),
        Artifact::Pipeline(p) => match &p.weave {
            Some(w) => Ok(render_weave(w, format, opts)),
            None => render_graph(&p.trivalent, format, opts),
        },
    }
}

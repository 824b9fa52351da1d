use serde::Serialize;

use super::ngraph::{assemble, boundary_braid, shift_layers, validate_ngraph, BraidWord, Layers, WeaveGraph, WeaveVertex};
use crate::cmap::propagate;
use crate::error::Result;
use crate::generator::{generate, OrbitOrder};
use crate::plabic::{
    build_tiling, dual_plabic_graph, make_trivalent, Certificate, PlabicGraph, PlabicTiling, ResolutionPolicy,
    ResolutionSite, RotationalSymmetry,
};
use crate::subset::{wrap, Collection};

/// A resolution site and the layer it belongs to: 0 for the trivalent
/// resolution of `G_D`, `i` for the shift producing `G_i`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LayerSite {
    pub layer: u32,
    #[serde(flatten)]
    pub site: ResolutionSite,
}

/// Symmetry of the weave under `(p, j) ↦ (p + ell, j)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WeaveCertificate {
    pub ell: u32,
    /// The weave itself is invariant.
    pub exact: bool,
    /// The rotated weave equals the one built with ties broken after
    /// shifting by `ell`.
    pub up_to_reresolution: Certificate,
    /// Tied sites whose tree differs between the two builds.
    pub reresolution_sites: Vec<LayerSite>,
    /// Untied sites in later layers that differ only because a layer
    /// below was re-resolved.
    pub downstream_sites: Vec<LayerSite>,
    /// Every re-resolved site is fixed by the rotation.
    pub confined_to_fixed: bool,
}

impl WeaveCertificate {
    pub fn holds(&self) -> bool {
        self.exact || (self.up_to_reresolution.is_symmetric() && self.confined_to_fixed)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Certificates {
    pub tiling: Certificate,
    /// For `G_D` before resolution.
    pub graph: Certificate,
    /// For the trivalent resolution, exactly.
    pub trivalent_exact: Certificate,
    /// Rotating the trivalent resolution gives the rotated-policy resolution.
    pub trivalent: Certificate,
    pub weave: Option<WeaveCertificate>,
}

#[derive(Debug, Clone, Serialize)]
pub struct PipelineReport {
    pub k: u32,
    pub n: u32,
    pub ell: u32,
    pub order: Option<OrbitOrder>,
    pub collection: Collection,
    pub tiling: PlabicTiling,
    pub graph: PlabicGraph,
    pub trivalent: PlabicGraph,
    pub layers: Vec<PlabicGraph>,
    /// Ranks of the trivalent graph and each layer: `k, k-1, …, 1`.
    pub ranks: Vec<u32>,
    pub weave: Option<WeaveGraph>,
    pub braid: Option<BraidWord>,
    pub violations: Vec<String>,
    pub sites: Vec<LayerSite>,
    pub certificates: Certificates,
}

struct Build {
    trivalent: PlabicGraph,
    sites: Vec<LayerSite>,
    layers: Option<Layers>,
}

fn build(graph: &PlabicGraph, k: u32, policy: ResolutionPolicy) -> Result<Build> {
    let resolved = make_trivalent(graph, policy)?;
    let mut sites: Vec<LayerSite> = resolved.sites.into_iter().map(|site| LayerSite { layer: 0, site }).collect();
    let layers = if k >= 2 {
        let layers = shift_layers(&resolved.graph, policy)?;
        for (i, s) in layers.sites.iter().enumerate() {
            sites.extend(s.iter().cloned().map(|site| LayerSite { layer: i as u32 + 1, site }));
        }
        Some(layers)
    } else {
        None
    };
    Ok(Build { trivalent: resolved.graph, sites, layers })
}

/// Generate, tile, dualize, resolve, shift and assemble, with symmetry
/// certificates at every level.
pub fn symmetric_weave_pipeline(k: u32, n: u32, ell: u32, order: Option<&OrbitOrder>) -> Result<PipelineReport> {
    let collection = generate(k, n, ell, order)?;
    let tiling = build_tiling(&collection)?;
    let graph = dual_plabic_graph(&tiling)?;
    let policy = ResolutionPolicy::equivariant(ell);
    let main = build(&graph, k, policy)?;
    let rotated = build(&graph, k, policy.rotated())?;

    let mut ranks = vec![main.trivalent.rank()?];
    let (weave, braid, violations, weave_cert, layers) = match (&main.layers, &rotated.layers) {
        (Some(a), Some(b)) => {
            for g in &a.graphs {
                ranks.push(g.rank()?);
            }
            let w = assemble(n, a)?;
            let w_rot = assemble(n, b)?;
            let violations = validate_ngraph(&w);
            let braid = boundary_braid(&w)?;
            let (reresolution_sites, downstream_sites): (Vec<LayerSite>, Vec<LayerSite>) =
                main.sites.iter().filter(|s| !rotated.sites.contains(s)).cloned().partition(|s| s.site.tied);
            let cert = WeaveCertificate {
                ell,
                exact: weave_rotation(&w, &w, ell).is_symmetric(),
                up_to_reresolution: weave_rotation(&w, &w_rot, ell),
                confined_to_fixed: reresolution_sites.iter().all(|s| s.site.fixed),
                reresolution_sites,
                downstream_sites,
            };
            (Some(w), Some(braid), violations, Some(cert), a.graphs.clone())
        }
        _ => (None, None, Vec::new(), None, Vec::new()),
    };

    let certificates = Certificates {
        tiling: tiling.rotational_symmetry_certificate(ell),
        graph: graph.rotational_symmetry_certificate(ell),
        trivalent_exact: main.trivalent.rotational_symmetry_certificate(ell),
        trivalent: main.trivalent.rotation_certificate_to(&rotated.trivalent, ell),
        weave: weave_cert,
    };
    Ok(PipelineReport {
        k,
        n,
        ell,
        order: order.cloned(),
        collection,
        tiling,
        graph,
        trivalent: main.trivalent,
        layers,
        ranks,
        weave,
        braid,
        violations,
        sites: main.sites,
        certificates,
    })
}

/// Checks that `(p, j) ↦ (p + ell, j)` extends to an isomorphism `a → b`
/// preserving vertex kinds and edge labels.
pub fn weave_rotation(a: &WeaveGraph, b: &WeaveGraph, ell: u32) -> Certificate {
    let broken = |witness: String| Certificate::Broken { ell, witness };
    if (a.n, a.k) != (b.n, b.k) {
        return broken("weaves of different shape".into());
    }
    let n = a.n;
    let target: std::collections::BTreeMap<(u32, u32), usize> = b.slots().into_iter().map(|(p, j, v)| ((p, j), v)).collect();
    let mut seeds = Vec::new();
    for (p, j, v) in a.slots() {
        let Some(&u) = target.get(&(wrap(p as i64 + ell as i64, n), j)) else {
            return broken(format!("slot ({p}, {j}) has no image"));
        };
        match (a.rot[v].as_slice(), b.rot[u].as_slice()) {
            ([x], [y]) => seeds.push((*x, *y)),
            _ => return broken(format!("endpoint at ({p}, {j}) is not a leaf")),
        }
    }
    let vertex_ok = |u: usize, v: usize| {
        let ok = match (a.vertices[u], b.vertices[v]) {
            (WeaveVertex::Boundary { point: p, layer: i }, WeaveVertex::Boundary { point: q, layer: j }) => {
                i == j && q == wrap(p as i64 + ell as i64, n)
            }
            (x, y) => x == y,
        };
        if ok {
            Ok(())
        } else {
            Err(format!("vertex {u} ({:?}) would go to vertex {v} ({:?})", a.vertices[u], b.vertices[v]))
        }
    };
    let dart_ok = |x: usize, y: usize| {
        if a.layer[x] == b.layer[y] {
            Ok(())
        } else {
            Err(format!("dart {x} (σ_{}) would go to dart {y} (σ_{})", a.layer[x], b.layer[y]))
        }
    };
    match propagate(a, b, &seeds, vertex_ok, dart_ok) {
        Ok(iso) => Certificate::Symmetric { ell, vertex_map: iso.vertices, cell_map: iso.darts },
        Err(w) => broken(w),
    }
}

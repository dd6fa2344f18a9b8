use anyhow::{anyhow, bail, Context as _};
use cokahler::cdga::{PivotOrder, Subcomplex};
use cokahler::contact::classify;
use cokahler::formality::{
    degree_one_massey, minimal_model, model_tensor_split_check, triple_massey, Class, FormalityVerdict,
};
use cokahler::verbitsky::{
    basic_complex, mapping_torus_model, omega_eta, omega_splitting, operator_identities, splitting_check,
    verify_lefschetz_iso, verify_lemma1, verify_lemma_d_eta, verify_verbitsky, VerbitskyStatus,
};
use cokahler::{CohomologyRing, Element, LieModel, Matrix, Q};

use crate::model_file::ModelFile;
use crate::report::*;

/// Where the mapping-torus automorphism comes from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TorusSource {
    /// The file's `[mapping_torus]` block.
    File,
    /// The file's matrix with a different declared order.
    Order(u32),
    /// The standard rotation of order `m` on each coordinate plane.
    Rotation(u32),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Command {
    Classify,
    Betti,
    Lefschetz,
    Verbitsky,
    Split,
    Massey { triples: Vec<[String; 3]> },
    Minimal { max_degree: usize },
    MappingTorus { source: TorusSource },
    Report { max_degree: usize },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Self::Classify => "classify",
            Self::Betti => "betti",
            Self::Lefschetz => "lefschetz",
            Self::Verbitsky => "verbitsky",
            Self::Split => "split",
            Self::Massey { .. } => "massey",
            Self::Minimal { .. } => "minimal",
            Self::MappingTorus { .. } => "mapping-torus",
            Self::Report { .. } => "report",
        }
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct Options {
    /// Report hypothesis violations without failing.
    pub informational: bool,
}

struct Ctx<'a> {
    file: &'a ModelFile,
    m: LieModel,
    co_kahler: bool,
    /// Whether an unmet co-Kähler hypothesis is itself a failure.
    strict: bool,
}

impl Ctx<'_> {
    fn has_structure(&self) -> bool {
        self.m.j().is_some() && self.m.xi().is_some() && self.m.eta().is_some()
    }
}

fn record(id: &'static str, invariant: &'static str, holds: bool, asserted: bool) -> CheckRecord {
    CheckRecord { id, invariant, holds, asserted, detail: None }
}

fn with_detail(mut c: CheckRecord, detail: impl Into<String>) -> CheckRecord {
    c.detail = Some(detail.into());
    c
}

fn strings(m: &Matrix) -> Vec<Vec<String>> {
    (0..m.rows()).map(|r| m.row(r).iter().map(ToString::to_string).collect()).collect()
}

/// Runs one command on one model.
pub fn run(command: &Command, file: &ModelFile, options: Options) -> anyhow::Result<ModelReport> {
    let m = file.lie_model()?;
    let structured = m.j().is_some() && m.xi().is_some() && m.eta().is_some();
    let verdict = if structured { Some(classify(&m)?) } else { None };
    let co_kahler = verdict.as_ref().is_some_and(|v| v.co_kahler);
    let strict = !options.informational && !matches!(command, Command::Report { .. });
    let ctx = Ctx { file, m, co_kahler, strict };
    let mut r = ModelReport { name: file.name.clone(), dimension: file.dimension, ..Default::default() };

    match command {
        Command::Classify => classification(&mut r, &ctx, verdict)?,
        Command::Betti => betti(&mut r, &ctx)?,
        Command::Verbitsky => {
            identities(&mut r, &ctx)?;
            d_eta(&mut r, &ctx)?;
            verbitsky(&mut r, &ctx)?;
        }
        Command::Split => splitting(&mut r, &ctx)?,
        Command::Lefschetz => lefschetz(&mut r, &ctx)?,
        Command::Massey { triples } => massey(&mut r, &ctx, triples)?,
        Command::Minimal { max_degree } => minimal(&mut r, &ctx, *max_degree)?,
        Command::MappingTorus { source } => mapping_torus(&mut r, &ctx, source)?,
        Command::Report { max_degree } => {
            if !structured {
                r.notes.push("no complete (J, ξ, η) structure: η-dependent sections skipped".into());
            }
            classification(&mut r, &ctx, verdict)?;
            betti(&mut r, &ctx)?;
            identities(&mut r, &ctx)?;
            d_eta(&mut r, &ctx)?;
            verbitsky(&mut r, &ctx)?;
            splitting(&mut r, &ctx)?;
            lefschetz(&mut r, &ctx)?;
            massey(&mut r, &ctx, &[])?;
            minimal(&mut r, &ctx, *max_degree)?;
            if file.automorphism.is_some() {
                mapping_torus(&mut r, &ctx, &TorusSource::File)?;
            }
        }
    }
    Ok(r)
}

/// Records the co-Kähler hypothesis of a theorem; returns whether the
/// theorem's conclusion is asserted.
fn hypothesis(r: &mut ModelReport, ctx: &Ctx, id: &'static str) -> bool {
    if !ctx.co_kahler {
        r.checks.push(record(id, "the structure is co-Kähler", false, ctx.strict));
    }
    ctx.co_kahler
}

fn classification(
    r: &mut ModelReport,
    ctx: &Ctx,
    verdict: Option<cokahler::contact::StructureVerdict>,
) -> anyhow::Result<()> {
    let Some(v) = verdict else {
        if ctx.strict {
            bail!("classification needs J, xi and eta in the [structure] section");
        }
        return Ok(());
    };
    r.checks.push(record(
        "classify.equivalence",
        "cosymplectic ∧ normal ⟺ co-Kähler ⟺ ∇J = 0",
        v.equivalence_holds(),
        v.almost_contact,
    ));
    r.checks.push(record(
        "classify.parallel",
        "co-Kähler ⟹ ξ is Killing and parallel, η is parallel",
        v.consequences_hold(),
        v.co_kahler,
    ));
    if let Some(matches) = v.omega_matches {
        r.checks.push(record("classify.omega", "the supplied ω equals g(J·, ·)", matches, true));
    }
    r.classification = Some(v);
    Ok(())
}

fn betti(r: &mut ModelReport, ctx: &Ctx) -> anyhow::Result<()> {
    let m = &ctx.m;
    let full = Subcomplex::full(m.dga()).cohomology().betti();
    let mut section = BettiSection { full, omega_eta: None, omega_one: None, basic: None };
    if let Some(xi) = m.xi() {
        let oe = omega_eta(m)?;
        section.omega_eta = Some(oe.cohomology().betti());
        section.basic = Some(basic_complex(m, xi)?.cohomology().betti());
        if m.eta().is_some() {
            match omega_splitting(m, &oe) {
                Ok(s) => section.omega_one = Some(s.omega_one.cohomology().betti()),
                Err(e) => r.notes.push(format!("Ω₁ unavailable: {e}")),
            }
        }
    }
    r.betti = Some(section);
    Ok(())
}

fn identities(r: &mut ModelReport, ctx: &Ctx) -> anyhow::Result<()> {
    let id = operator_identities(&ctx.m)?;
    let holds = id.holds();
    let mut failures = id.leibniz_failures.clone();
    if let Some(a) = id.cartan {
        failures.push(format!("{{d, ι_X{a}}} differs from the coadjoint action"));
    }
    if let Some(a) = id.iota_squared {
        failures.push(format!("ι_X{a}² ≠ 0"));
    }
    r.identities = Some(IdentitySection {
        d_squared: id.d_squared,
        cartan: id.cartan.is_none(),
        iota_squared: id.iota_squared.is_none(),
        d_d_eta: id.d_d_eta,
        leibniz: id.leibniz_failures.is_empty(),
        failures,
    });
    r.checks.push(record(
        "identities",
        "d² = 0, L_X = {d, ι_X}, ι_X² = 0, {d, d_η} = 0 and Leibniz, as matrix identities",
        holds,
        true,
    ));
    Ok(())
}

fn d_eta(r: &mut ModelReport, ctx: &Ctx) -> anyhow::Result<()> {
    let m = &ctx.m;
    let (Some(xi), Some(eta)) = (m.xi(), m.eta()) else { return Ok(()) };
    if m.flat(xi) != eta {
        r.notes.push("η is not g(ξ, ·): d_η = L_ξ not tested".into());
        return Ok(());
    }
    let cmp = verify_lemma_d_eta(m)?;
    r.d_eta = Some(DEtaSection { equals_lie_derivative: cmp.equal(), first_difference: cmp.first_difference });
    r.checks.push(record("d_eta.lie", "η = g(ξ, ·) ⟹ d_η = L_ξ in every degree", cmp.equal(), true));
    Ok(())
}

fn verbitsky(r: &mut ModelReport, ctx: &Ctx) -> anyhow::Result<()> {
    let m = &ctx.m;
    if m.eta().is_none() {
        if ctx.strict {
            bail!("the Verbitsky check needs eta");
        }
        return Ok(());
    }
    let v = verify_verbitsky(m)?;
    let quasi = v.quasi_isomorphism();
    r.verbitsky = Some(VerbitskySection {
        eta_parallel: v.eta_parallel,
        parallel_witness: v.parallel_witness.as_ref().map(ToString::to_string),
        status: v.status.label(),
        kernel_betti: v.kernel_betti.clone(),
        full_betti: v.full_betti.clone(),
        degrees: v
            .degrees
            .iter()
            .map(|d| InducedRecord {
                degree: d.p,
                rank: d.rank,
                injective: d.injective,
                surjective: d.surjective,
                kernel: d.kernel.iter().map(ToString::to_string).collect(),
            })
            .collect(),
    });
    r.checks.push(with_detail(
        record("verbitsky", "η parallel ⟹ ker d_η ↪ Ω is a quasi-isomorphism", quasi, v.eta_parallel),
        v.status.label(),
    ));
    if v.status == VerbitskyStatus::Violated {
        r.notes.push("η is parallel but the inclusion is not a quasi-isomorphism".into());
    }
    Ok(())
}

fn splitting(r: &mut ModelReport, ctx: &Ctx) -> anyhow::Result<()> {
    let m = &ctx.m;
    if m.xi().is_none() || m.eta().is_none() {
        if ctx.strict {
            bail!("the splitting needs xi and eta");
        }
        return Ok(());
    }
    let asserted = hypothesis(r, ctx, "split.hypothesis");
    let oe = omega_eta(m)?;
    let s = match omega_splitting(m, &oe) {
        Ok(s) => s,
        Err(e) => {
            r.checks.push(with_detail(
                record("split.decomposition", "Ω^p_η = Ω^p_1 ⊕ η∧Ω^{p−1}_1 for p > 0", false, asserted),
                e.to_string(),
            ));
            return Ok(());
        }
    };
    r.checks.push(record("split.decomposition", "Ω^p_η = Ω^p_1 ⊕ η∧Ω^{p−1}_1 for p > 0", true, asserted));
    let basic = verify_lemma1(m, &s)?;
    r.checks.push(record("split.basic", "Ω₁ is the basic complex of the foliation by ξ", basic, asserted));
    let report = splitting_check(m, &s)?;
    r.checks.push(record("split.cohomology", "H^p_η = H^p_1 ⊕ [η]∧H^{p−1}_1", report.holds(), asserted));
    r.splitting = Some(SplittingSection {
        omega_eta_dims: s.omega_eta.dims(),
        omega_one_dims: s.omega_one.dims(),
        omega_two_dims: s.omega_two.dims(),
        omega_one_is_basic: basic,
        dims_add: report.dims_add,
        class_map_iso: report.map_iso.clone(),
        betti_eta: report.betti_eta,
        betti_one: report.betti_one,
    });
    Ok(())
}

fn lefschetz(r: &mut ModelReport, ctx: &Ctx) -> anyhow::Result<()> {
    let m = &ctx.m;
    if !ctx.has_structure() || m.dim().is_multiple_of(2) {
        if ctx.strict {
            bail!("the Lefschetz map needs J, xi and eta on an odd-dimensional model");
        }
        return Ok(());
    }
    let asserted = hypothesis(r, ctx, "lefschetz.hypothesis");
    let invariant = "𝓛: H^p_η → H^{2n+1−p}_η is an isomorphism for p ≤ n and ω^n∧η is a nonzero class";
    match verify_lefschetz_iso(m) {
        Ok(rep) => {
            r.checks.push(record("lefschetz", invariant, rep.holds(), asserted));
            r.lefschetz = Some(LefschetzSection {
                n: rep.n,
                degrees: rep
                    .degrees
                    .iter()
                    .map(|d| LefschetzRecord {
                        degree: d.p,
                        rank: d.rank,
                        iso: d.iso,
                        matrix: strings(&d.matrix),
                        kernel: d.kernel.iter().map(ToString::to_string).collect(),
                    })
                    .collect(),
                volume_class_nonzero: rep.volume_class_nonzero,
                components_ok: rep.components_ok,
                preserves_closed_and_exact: rep.preserves_closed_and_exact,
            });
        }
        Err(e) => r.checks.push(with_detail(record("lefschetz", invariant, false, asserted), e.to_string())),
    }
    Ok(())
}

fn parse_class(ring: &CohomologyRing, text: &str) -> anyhow::Result<Class<Q>> {
    let x = Element::parse(ring.complex().algebra(), text).with_context(|| format!("class `{text}`"))?;
    let coords = ring.class_of(&x).with_context(|| format!("class `{text}`"))?;
    Ok(Class::new(x.degree(), coords))
}

fn massey(r: &mut ModelReport, ctx: &Ctx, triples: &[[String; 3]]) -> anyhow::Result<()> {
    let ring = Subcomplex::full(ctx.m.dga()).cohomology();
    let verdict = degree_one_massey(&ring)?;
    let (tested, obstruction) = match &verdict {
        FormalityVerdict::ConsistentWithFormal { tested } => (Some(*tested), None),
        FormalityVerdict::Obstructed(w) => {
            let (i, j, k) = w.indices;
            (None, Some(format!("⟨h{}, h{}, h{}⟩ = {}", i + 1, j + 1, k + 1, w.value)))
        }
    };
    let mut records = Vec::new();
    for names in triples {
        let [x, y, z] = [0, 1, 2].map(|i| parse_class(&ring, &names[i]));
        let (x, y, z) = (x?, y?, z?);
        let forward = triple_massey(&ring, &x, &y, &z, PivotOrder::Forward)
            .map_err(|e| anyhow!("⟨{}, {}, {}⟩: {e}", names[0], names[1], names[2]))?;
        let reverse = triple_massey(&ring, &x, &y, &z, PivotOrder::Reverse)?;
        records.push(TripleRecord {
            classes: names.clone(),
            value: forward.value.to_string(),
            value_class: forward.value_class.iter().map(ToString::to_string).collect(),
            indeterminacy_dim: forward.indeterminacy_dim(),
            vanishes: forward.vanishes,
            pivot_invariant: forward.vanishes == reverse.vanishes,
        });
    }
    let consistent = matches!(verdict, FormalityVerdict::ConsistentWithFormal { .. });
    r.checks.push(record(
        "massey.degree_one",
        "co-Kähler ⟹ every triple Massey product of degree-1 classes vanishes",
        consistent,
        ctx.co_kahler,
    ));
    if !records.is_empty() {
        let invariant = records.iter().all(|t| t.pivot_invariant);
        r.checks.push(record(
            "massey.pivots",
            "Massey verdicts do not depend on the bounding cochains",
            invariant,
            true,
        ));
    }
    r.massey = Some(MasseySection { h1: ring.dim(1), verdict: verdict.label(), tested, obstruction, triples: records });
    Ok(())
}

fn minimal(r: &mut ModelReport, ctx: &Ctx, n: usize) -> anyhow::Result<()> {
    let m = &ctx.m;
    let model = minimal_model(&Subcomplex::full(m.dga()), n)?;
    let generators = model
        .differentials()
        .into_iter()
        .zip(model.algebra().generators())
        .map(|((name, d), g)| GeneratorRecord { name, degree: g.degree, d: d.to_string() })
        .collect();
    r.checks.push(record(
        "minimal.model",
        "d(V) ⊆ Λ^{≥2}V, H^p iso for p ≤ N and injective for p = N + 1",
        model.is_minimal() && model.quasi_isomorphic_through_cap(),
        true,
    ));
    let mut section = MinimalSection {
        max_degree: n,
        generator_counts: model.generator_counts(),
        generators,
        minimal: model.is_minimal(),
        betti: model.betti(),
        quasi_isomorphic_through_cap: model.quasi_isomorphic_through_cap(),
        tensor_split: None,
    };
    if m.xi().is_some() && m.eta().is_some() {
        let invariant = "ℳ(Ω_η) ≅ ℳ(Ω₁) ⊗ ∧(η): generator counts, Betti numbers and cochain splitting";
        match model_tensor_split_check(m, n) {
            Ok(t) => {
                r.checks.push(record("minimal.split", invariant, t.holds(), ctx.co_kahler));
                section.tensor_split = Some(TensorSplitSection {
                    counts_match: t.counts_match,
                    betti_match: t.betti_match,
                    both_minimal: t.both_minimal,
                    cochain_iso: t.cochain_iso,
                    omega_eta_generators: t.eta_generators,
                    omega_one_generators: t.one_generators,
                    omega_eta_betti: t.eta_betti,
                    tensor_betti: t.tensor_betti,
                });
            }
            Err(e) => {
                r.checks.push(with_detail(record("minimal.split", invariant, false, ctx.co_kahler), e.to_string()))
            }
        }
    }
    r.minimal_model = Some(section);
    Ok(())
}

/// The rotation of order `order` on each coordinate plane `(e^{2i−1}, e^{2i})`.
pub fn rotation(dim: usize, order: u32) -> anyhow::Result<Matrix> {
    if !dim.is_multiple_of(2) {
        bail!("--rotation needs an even-dimensional fibre, found dimension {dim}");
    }
    let block: [[i64; 2]; 2] = match order {
        1 => [[1, 0], [0, 1]],
        2 => [[-1, 0], [0, -1]],
        3 => [[0, -1], [1, -1]],
        4 => [[0, -1], [1, 0]],
        6 => [[1, -1], [1, 0]],
        _ => bail!("no integral rotation of order {order}; use 1, 2, 3, 4 or 6"),
    };
    let mut a = Matrix::zeros(dim, dim);
    for p in (0..dim).step_by(2) {
        for (r, row) in block.iter().enumerate() {
            for (c, v) in row.iter().enumerate() {
                a[(p + r, p + c)] = Q::from_integer((*v).into());
            }
        }
    }
    Ok(a)
}

fn mapping_torus(r: &mut ModelReport, ctx: &Ctx, source: &TorusSource) -> anyhow::Result<()> {
    let m = &ctx.m;
    let (matrix, order) = match (source, &ctx.file.automorphism) {
        (TorusSource::Rotation(k), _) => (rotation(m.dim(), *k)?, *k),
        (TorusSource::Order(k), Some(t)) => (t.matrix.clone(), *k),
        (TorusSource::File, Some(t)) => (t.matrix.clone(), t.order),
        (_, None) => bail!("model has no [mapping_torus] block; pass --rotation"),
    };
    let phi = ctx.file.fibre_automorphism(m, matrix.clone())?;
    let torus = mapping_torus_model(m.dga(), &phi, order)?;
    // Pullback on covectors preserves g⁻¹ and commutes with the transpose of J.
    let kahler = m.j().map(|j| {
        let g_inv = m.metric_inverse();
        let jt = j.transpose();
        matrix.transpose().mul(g_inv).mul(&matrix) == *g_inv && matrix.mul(&jt) == jt.mul(&matrix)
    });
    let verdict = degree_one_massey(&torus.model.cohomology())?;
    let kunneth = torus.kunneth_holds();
    r.checks.push(record("mapping_torus.kunneth", "H(mapping torus) = H(fibre)^φ ⊗ H(S¹)", kunneth, true));
    r.checks.push(record(
        "mapping_torus.massey",
        "φ a Kähler isometry ⟹ degree-1 Massey products of the mapping torus vanish",
        matches!(verdict, FormalityVerdict::ConsistentWithFormal { .. }),
        kahler == Some(true),
    ));
    r.mapping_torus = Some(MappingTorusSection {
        order,
        matrix: strings(&matrix),
        fibre_betti: Subcomplex::full(m.dga()).cohomology().betti(),
        invariant_dims: torus.fibre_invariants.dims(),
        invariant_betti: torus.fibre_invariant_betti(),
        betti: torus.betti(),
        kunneth,
        kahler_isometry: kahler,
        massey: verdict.label(),
    });
    Ok(())
}

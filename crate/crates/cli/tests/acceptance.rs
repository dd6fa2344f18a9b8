//! End-to-end checks over the bundled corpus. Each criterion prints one
//! line; the process exits non-zero if any of them fails.

use std::path::PathBuf;
use std::process::Command as Process;

use cokahler_cli::{corpus, run, run_all, Command, ModelFile, ModelReport, Options, TorusSource};

fn models_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../models")
}

fn load(name: &str) -> ModelFile {
    ModelFile::load(&models_dir().join(format!("{name}.model"))).unwrap()
}

fn exec(command: Command, name: &str) -> ModelReport {
    run(&command, &load(name), Options::default()).unwrap()
}

fn binomial(n: usize) -> Vec<usize> {
    let mut row = vec![1usize];
    for _ in 0..n {
        let mut next = vec![1; row.len() + 1];
        for i in 1..row.len() {
            next[i] = row[i - 1] + row[i];
        }
        row = next;
    }
    row
}

fn identities_everywhere() -> bool {
    let paths = corpus(&models_dir()).unwrap();
    let report = run_all(&Command::Report { max_degree: 3 }, &paths, Options::default()).unwrap();
    report.models.len() == 5
        && report.models.iter().all(|m| {
            let Some(s) = &m.identities else { return false };
            let eta_ok = match m.name.as_str() {
                "torus3" | "torus5" | "heisenberg" => s.d_d_eta == Some(true),
                _ => s.d_d_eta != Some(false),
            };
            s.d_squared
                && s.cartan
                && s.iota_squared
                && s.leibniz
                && eta_ok
                && m.check("identities").is_some_and(|c| c.holds)
        })
}

fn d_eta_is_lie_derivative() -> bool {
    ["torus3", "torus5", "heisenberg"].iter().all(|name| {
        let r = exec(Command::Report { max_degree: 3 }, name);
        r.d_eta.as_ref().is_some_and(|s| s.equals_lie_derivative && s.first_difference.is_none())
            && r.check("d_eta.lie").is_some_and(|c| c.holds && c.asserted)
    })
}

fn kernel_inclusion() -> bool {
    let iso_everywhere = ["torus3", "torus5"].iter().all(|name| {
        let r = exec(Command::Verbitsky, name);
        let s = r.verbitsky.as_ref().unwrap();
        s.eta_parallel && s.degrees.iter().all(|d| d.injective && d.surjective) && s.kernel_betti == s.full_betti
    });
    let heisenberg = exec(Command::Verbitsky, "heisenberg");
    let s = heisenberg.verbitsky.as_ref().unwrap();
    let h2 = s.degrees.iter().find(|d| d.degree == 2).unwrap();
    iso_everywhere && !s.eta_parallel && !h2.injective && !h2.kernel.is_empty()
}

fn splitting() -> bool {
    ["torus3", "torus5"].iter().all(|name| {
        let r = exec(Command::Split, name);
        let s = r.splitting.as_ref().unwrap();
        let betti_add = (0..s.betti_eta.len()).all(|p| {
            let lower = if p == 0 { 0 } else { s.betti_one[p - 1] };
            s.betti_eta[p] == s.betti_one[p] + lower
        });
        let dims_add =
            (1..s.omega_eta_dims.len()).all(|p| s.omega_eta_dims[p] == s.omega_one_dims[p] + s.omega_two_dims[p]);
        let two_is_eta_times_one = (1..s.omega_two_dims.len()).all(|p| s.omega_two_dims[p] == s.omega_one_dims[p - 1]);
        betti_add
            && dims_add
            && two_is_eta_times_one
            && s.dims_add
            && s.omega_one_is_basic
            && s.class_map_iso.iter().all(|&b| b)
            && r.passes()
    })
}

fn lefschetz() -> bool {
    [("torus3", 1), ("torus5", 2)].iter().all(|&(name, n)| {
        let r = exec(Command::Lefschetz, name);
        let s = r.lefschetz.as_ref().unwrap();
        s.n == n
            && s.degrees.len() == n + 1
            && s.degrees.iter().all(|d| d.iso && d.rank == d.matrix.len() && d.kernel.is_empty())
            && s.volume_class_nonzero
            && r.passes()
    })
}

fn classification() -> bool {
    let h = exec(Command::Classify, "heisenberg");
    let v = h.classification.as_ref().unwrap();
    let heisenberg = v.cosymplectic
        && !v.normal
        && !v.co_kahler
        && !v.killing_xi
        && !v.parallel_xi
        && v.witness("L_ξ g").is_some()
        && v.witness("∇V").is_some();
    let tori = ["torus3", "torus5"].iter().all(|name| {
        let r = exec(Command::Classify, name);
        let v = r.classification.as_ref().unwrap();
        v.co_kahler && v.parallel_xi && v.parallel_eta && v.parallel_j && v.witnesses.is_empty()
    });
    let equivalence = corpus(&models_dir()).unwrap().iter().all(|p| {
        let f = ModelFile::load(p).unwrap();
        if f.xi.is_none() || f.eta.is_none() {
            return true;
        }
        let r = run(&Command::Classify, &f, Options::default()).unwrap();
        r.classification.as_ref().is_none_or(|v| v.equivalence_holds())
            && r.check("classify.equivalence").is_none_or(|c| c.holds)
    });
    heisenberg && tori && equivalence
}

fn mapping_tori() -> bool {
    let torus = |source| exec(Command::MappingTorus { source }, "t2-rot4-mapping-torus");
    let rot4 = torus(TorusSource::Rotation(4));
    let identity = torus(TorusSource::Rotation(1));
    let betti = |r: &ModelReport| r.mapping_torus.as_ref().unwrap().betti.clone();
    let kunneth = [1, 2, 3, 4, 6].iter().all(|&k| {
        let r = torus(TorusSource::Rotation(k));
        let s = r.mapping_torus.as_ref().unwrap();
        let mut expected = vec![0; s.invariant_betti.len() + 1];
        for (i, b) in s.invariant_betti.iter().enumerate() {
            expected[i] += b;
            expected[i + 1] += b;
        }
        s.betti == expected && s.kunneth
    });
    let negid = exec(Command::MappingTorus { source: TorusSource::File }, "t2-negid-mapping-torus");
    betti(&rot4) == [1, 1, 1, 1] && betti(&identity) == binomial(3) && betti(&negid) == [1, 1, 1, 1] && kunneth
}

fn formality() -> bool {
    let tori = ["torus3", "torus5"].iter().all(|name| {
        let r = exec(Command::Massey { triples: Vec::new() }, name);
        r.massey.as_ref().is_some_and(|s| s.verdict == "consistent-with-formal") && r.passes()
    });
    let triple = ["e1", "e2", "e2"].map(String::from);
    let h = exec(Command::Massey { triples: vec![triple] }, "heisenberg");
    let t = &h.massey.as_ref().unwrap().triples[0];
    let heisenberg = !t.vanishes && t.indeterminacy_dim == 0 && t.pivot_invariant;
    let models = ["torus3", "torus5"].iter().all(|name| {
        let r = exec(Command::Minimal { max_degree: 3 }, name);
        let s = r.minimal_model.as_ref().unwrap();
        let split = s.tensor_split.as_ref().unwrap();
        s.minimal
            && s.quasi_isomorphic_through_cap
            && split.omega_one_generators[1] + 1 == split.omega_eta_generators[1]
            && split.counts_match
            && split.betti_match
            && r.passes()
    });
    tori && heisenberg && models
}

fn determinism() -> bool {
    let once = || {
        Process::new(env!("CARGO_BIN_EXE_cokahler"))
            .args(["report", "--all", "--corpus"])
            .arg(models_dir())
            .output()
            .unwrap()
    };
    let (a, b) = (once(), once());
    a.status.success() && !a.stdout.is_empty() && a.stdout == b.stdout
}

fn main() {
    type Criterion = (&'static str, fn() -> bool);
    let criteria: [Criterion; 9] = [
        ("operator identities on every corpus model", identities_everywhere),
        ("d_η equals L_ξ degreewise", d_eta_is_lie_derivative),
        ("ker(d_η) inclusion: iso on tori, non-injective H² on heisenberg", kernel_inclusion),
        ("Ω_η = Ω₁ ⊕ η∧Ω₁ with additive Betti numbers", splitting),
        ("Lefschetz maps are isomorphisms on torus3 and torus5", lefschetz),
        ("classification of heisenberg and the tori", classification),
        ("mapping tori of T² and their Betti numbers", mapping_tori),
        ("Massey products and minimal models", formality),
        ("report --all is byte-for-byte deterministic", determinism),
    ];
    let mut failed = Vec::new();
    for (i, (name, check)) in criteria.iter().enumerate() {
        let ok = check();
        println!("criterion {}: {} ({name})", i + 1, if ok { "pass" } else { "FAIL" });
        if !ok {
            failed.push(i + 1);
        }
    }
    if !failed.is_empty() {
        eprintln!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}

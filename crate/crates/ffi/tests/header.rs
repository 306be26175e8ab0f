use std::path::{Path, PathBuf};
use std::process::Command;

fn crate_dir() -> &'static Path {
    Path::new(env!("CARGO_MANIFEST_DIR"))
}

/// Directory holding the library artifacts: the parent of `deps/`.
fn artifact_dir() -> PathBuf {
    let exe = std::env::current_exe().unwrap();
    exe.parent().and_then(Path::parent).unwrap().to_path_buf()
}

#[test]
fn header_declares_every_export() {
    let header = std::fs::read_to_string(crate_dir().join("include/qst.h")).unwrap();
    for name in [
        "typedef struct QstGraph QstGraph;",
        "typedef struct QstEvolution QstEvolution;",
        "QST_STATUS_OK = 0",
        "QST_STATUS_PANIC",
        "qst_last_error_message",
        "qst_graph_path",
        "qst_graph_cycle",
        "qst_graph_complete_bipartite",
        "qst_graph_from_edge_list",
        "qst_graph_free",
        "qst_graph_vertex_count",
        "qst_graph_edge_count",
        "qst_graph_degree",
        "qst_graph_distance",
        "qst_evolution_new",
        "qst_evolution_free",
        "qst_evolution_eigenvalues",
        "qst_evolution_amplitude",
        "qst_transfer_probability",
        "qst_peak_two_level",
        "qst_peak_grid",
        "qst_cospectrality",
        "qst_find_involution",
        "qst_q_threshold",
        "qst_k_threshold_two_class",
        "qst_readout_time_bound",
    ] {
        assert!(header.contains(name), "header lacks {name}");
    }
}

#[test]
fn c_program_links_against_static_library() {
    let lib = artifact_dir().join("libqst_ffi.a");
    if !lib.exists() {
        eprintln!("skipping: {} not built", lib.display());
        return;
    }
    let cc = std::env::var("CC").unwrap_or_else(|_| "cc".into());
    let out_dir = tempfile::tempdir().unwrap();
    let exe = out_dir.path().join("smoke");
    let status = match Command::new(&cc)
        .arg("-std=c11")
        .arg("-D_DEFAULT_SOURCE")
        .arg("-Wall")
        .arg("-Werror")
        .arg("-I")
        .arg(crate_dir().join("include"))
        .arg(crate_dir().join("tests/c/smoke.c"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
    {
        Ok(s) => s,
        Err(e) => {
            eprintln!("skipping: no C compiler ({cc}): {e}");
            return;
        }
    };
    assert!(status.success(), "C compilation failed");
    let run = Command::new(&exe).output().unwrap();
    assert!(
        run.status.success(),
        "smoke program failed: {}",
        String::from_utf8_lossy(&run.stderr)
    );
    assert!(String::from_utf8_lossy(&run.stdout).starts_with("t_star=1.570796326"));
}

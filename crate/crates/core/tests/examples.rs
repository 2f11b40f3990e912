// Every example compiles as a module here and runs to completion.

#[allow(dead_code)]
mod catalog_heatmap {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/catalog_heatmap.rs"));
}

#[allow(dead_code)]
mod classify_kappa {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/classify_kappa.rs"));
}

#[allow(dead_code)]
mod compose_manifest {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/compose_manifest.rs"));
}

#[allow(dead_code)]
mod fourier_transform {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/fourier_transform.rs"));
}

#[allow(dead_code)]
mod grover_search {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/grover_search.rs"));
}

#[allow(dead_code)]
mod phase_estimation {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/phase_estimation.rs"));
}

#[allow(dead_code)]
mod qaoa_maxcut {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/qaoa_maxcut.rs"));
}

#[allow(dead_code)]
mod qasm_export {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/qasm_export.rs"));
}

#[allow(dead_code)]
mod state_preparation {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/state_preparation.rs"));
}

#[allow(dead_code)]
mod tradeoff {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/tradeoff.rs"));
}

#[allow(dead_code)]
mod vqe {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/vqe.rs"));
}

#[test]
fn examples_run() {
    catalog_heatmap::run().expect("catalog_heatmap");
    classify_kappa::run().expect("classify_kappa");
    compose_manifest::run().expect("compose_manifest");
    fourier_transform::run().expect("fourier_transform");
    grover_search::run().expect("grover_search");
    phase_estimation::run().expect("phase_estimation");
    qaoa_maxcut::run().expect("qaoa_maxcut");
    qasm_export::run().expect("qasm_export");
    state_preparation::run().expect("state_preparation");
    tradeoff::run().expect("tradeoff");
    vqe::run().expect("vqe");
}

use resq::verify::{self, Pipeline, Scope, VerifyConfig};

fn failing_checks() -> Vec<String> {
    let config = VerifyConfig {
        scope: Scope::Families,
        max_n: 8,
        ..VerifyConfig::default()
    };
    verify::run(&config, Pipeline::default())
        .into_iter()
        .filter(|o| o.is_failure())
        .map(|o| o.check)
        .collect()
}

#[cfg(feature = "broken-rq-sign")]
#[test]
fn flipped_rq_sign_fails_verification() {
    let failed = failing_checks();
    assert!(
        failed.iter().any(|c| c == "closed_form.rq_matrix"),
        "{failed:?}"
    );
    assert!(
        failed.iter().any(|c| c == "closed_form.rq_spectrum"),
        "{failed:?}"
    );
}

#[cfg(not(feature = "broken-rq-sign"))]
#[test]
fn clean_build_passes_verification() {
    assert!(failing_checks().is_empty());
}

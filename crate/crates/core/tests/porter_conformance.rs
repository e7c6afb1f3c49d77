//! Porter's published test vocabulary (voc.txt) and expected stems
//! (output.txt), 23,531 words.

use sentiment_signals::textprep::stem_token;

const VOC: &str = include_str!("data/porter_voc.txt");
const OUTPUT: &str = include_str!("data/porter_output.txt");

#[test]
fn matches_reference_vocabulary() {
    let words: Vec<&str> = VOC.lines().collect();
    let stems: Vec<&str> = OUTPUT.lines().collect();
    assert_eq!(words.len(), stems.len());
    assert!(words.len() >= 1000);
    let mismatches: Vec<String> = words
        .iter()
        .zip(&stems)
        .filter(|(w, s)| stem_token(w) != **s)
        .map(|(w, s)| format!("{w}: got {} want {s}", stem_token(w)))
        .collect();
    assert!(
        mismatches.is_empty(),
        "{} of {} differ, first: {:?}",
        mismatches.len(),
        words.len(),
        &mismatches[..mismatches.len().min(10)]
    );
}

#[test]
fn idempotent_on_reference_stems_of_fixture_words() {
    for w in ["caresses", "ponies", "running", "earnings", "rocket", "bullish"] {
        let once = stem_token(w);
        assert_eq!(stem_token(&once), once, "{w}");
    }
}

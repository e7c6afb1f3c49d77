//! Rule-based lemmatizer: an exception table plus ordered suffix rules,
//! applied until no rule fires.

use super::porter::{ends_cvc, measure_of};

const EXCEPTIONS: &[(&str, &str)] = &[
    ("always", "always"),
    ("anything", "anything"),
    ("bus", "bus"),
    ("children", "child"),
    ("died", "die"),
    ("does", "do"),
    ("during", "during"),
    ("evening", "evening"),
    ("everything", "everything"),
    ("feet", "foot"),
    ("geese", "goose"),
    ("has", "have"),
    ("his", "his"),
    ("hundred", "hundred"),
    ("indeed", "indeed"),
    ("is", "be"),
    ("its", "its"),
    ("lied", "lie"),
    ("men", "man"),
    ("mice", "mouse"),
    ("morning", "morning"),
    ("news", "news"),
    ("nothing", "nothing"),
    ("people", "person"),
    ("perhaps", "perhaps"),
    ("plus", "plus"),
    ("series", "series"),
    ("something", "something"),
    ("species", "species"),
    ("teeth", "tooth"),
    ("this", "this"),
    ("tied", "tie"),
    ("used", "use"),
    ("was", "be"),
    ("were", "be"),
    ("women", "woman"),
    ("yes", "yes"),
];

fn exception(token: &str) -> Option<&'static str> {
    EXCEPTIONS
        .binary_search_by(|(k, _)| k.cmp(&token))
        .ok()
        .map(|i| EXCEPTIONS[i].1)
}

fn has_vowel(s: &str) -> bool {
    s.bytes().any(|b| matches!(b, b'a' | b'e' | b'i' | b'o' | b'u'))
}

/// Repairs a stem left by stripping `-ed`/`-ing`: restores `-ate`, `-ble`,
/// `-ize`, undoubles a final consonant, or restores a silent `e`.
fn repair(stem: &str) -> String {
    for (tail, full) in [("at", "ate"), ("bl", "ble"), ("iz", "ize")] {
        if let Some(head) = stem.strip_suffix(tail) {
            return format!("{head}{full}");
        }
    }
    let b = stem.as_bytes();
    let n = b.len();
    if n >= 2 && b[n - 1] == b[n - 2] && !has_vowel(&stem[n - 1..]) && b[n - 1] != b'y' {
        if matches!(b[n - 1], b'l' | b's' | b'z') {
            return stem.to_string();
        }
        return stem[..n - 1].to_string();
    }
    if measure_of(stem) == 1 && ends_cvc(stem) {
        return format!("{stem}e");
    }
    stem.to_string()
}

fn apply_rule(token: &str) -> Option<String> {
    if let Some(lemma) = exception(token) {
        return (lemma != token).then(|| lemma.to_string());
    }
    let n = token.len();
    if token.ends_with("sses") {
        return Some(token[..n - 2].to_string());
    }
    if n > 4 && (token.ends_with("ies") || token.ends_with("ied")) {
        return Some(format!("{}y", &token[..n - 3]));
    }
    if n > 4 && ["ches", "shes", "xes", "zzes"].iter().any(|s| token.ends_with(s)) {
        return Some(token[..n - 2].to_string());
    }
    if n > 4 && token.ends_with("ses") {
        return Some(token[..n - 1].to_string());
    }
    if n > 3
        && token.ends_with('s')
        && !["ss", "us", "is"].iter().any(|s| token.ends_with(s))
    {
        return Some(token[..n - 1].to_string());
    }
    if token.ends_with("eed") {
        let stem = &token[..n - 3];
        return (measure_of(stem) > 0).then(|| token[..n - 1].to_string());
    }
    for suffix in ["ing", "ed"] {
        if let Some(stem) = token.strip_suffix(suffix) {
            if stem.len() >= 2 && has_vowel(stem) && !(suffix == "ing" && stem.len() < 3) {
                return Some(repair(stem));
            }
        }
    }
    None
}

/// Lemma of a lowercase token. Every rule shortens the token or maps it
/// through the exception table, so iteration terminates at a fixpoint.
pub fn lemmatize_token(token: &str) -> String {
    let mut current = token.to_string();
    while let Some(next) = apply_rule(&current) {
        current = next;
    }
    current
}

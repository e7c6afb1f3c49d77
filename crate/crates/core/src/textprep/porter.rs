//! Porter stemmer, following Martin Porter's reference ANSI C release
//! (including its `bli -> ble` and `logi -> log` departures from the
//! original 1980 description).

/// Byte buffer with the cursor state of the reference implementation: `k`
/// is the index of the last letter, `j` the end of the current stem.
struct Word {
    b: Vec<u8>,
    k: usize,
    j: usize,
}

impl Word {
    fn new(word: &str) -> Self {
        let b = word.as_bytes().to_vec();
        let k = b.len().saturating_sub(1);
        Word { b, k, j: k }
    }

    fn into_string(mut self) -> String {
        self.b.truncate(self.k + 1);
        String::from_utf8(self.b).expect("ascii input")
    }

    fn cons(&self, i: usize) -> bool {
        match self.b[i] {
            b'a' | b'e' | b'i' | b'o' | b'u' => false,
            b'y' => i == 0 || !self.cons(i - 1),
            _ => true,
        }
    }

    /// Number of VC sequences in `b[0..=j]`.
    fn measure(&self) -> usize {
        let mut n = 0;
        let mut i = 0;
        loop {
            if i > self.j {
                return n;
            }
            if !self.cons(i) {
                break;
            }
            i += 1;
        }
        i += 1;
        loop {
            loop {
                if i > self.j {
                    return n;
                }
                if self.cons(i) {
                    break;
                }
                i += 1;
            }
            i += 1;
            n += 1;
            loop {
                if i > self.j {
                    return n;
                }
                if !self.cons(i) {
                    break;
                }
                i += 1;
            }
            i += 1;
        }
    }

    fn vowel_in_stem(&self) -> bool {
        (0..=self.j).any(|i| !self.cons(i))
    }

    fn double_cons(&self, j: usize) -> bool {
        j >= 1 && self.b[j] == self.b[j - 1] && self.cons(j)
    }

    /// consonant-vowel-consonant ending at `i`, last letter not w, x or y.
    fn cvc(&self, i: usize) -> bool {
        if i < 2 || !self.cons(i) || self.cons(i - 1) || !self.cons(i - 2) {
            return false;
        }
        !matches!(self.b[i], b'w' | b'x' | b'y')
    }

    fn ends(&mut self, s: &str) -> bool {
        let s = s.as_bytes();
        let len = s.len();
        if len > self.k + 1 || self.b[self.k] != s[len - 1] {
            return false;
        }
        if &self.b[self.k + 1 - len..=self.k] != s {
            return false;
        }
        // A whole-word match leaves an empty stem, encoded as j == usize::MAX.
        self.j = (self.k + 1 - len).wrapping_sub(1);
        true
    }

    fn set_to(&mut self, s: &str) {
        let start = self.j.wrapping_add(1);
        self.b.truncate(start);
        self.b.extend_from_slice(s.as_bytes());
        self.k = self.b.len() - 1;
    }

    fn replace_if_measured(&mut self, s: &str) {
        if self.stem_measure() > 0 {
            self.set_to(s);
        }
    }

    fn stem_measure(&self) -> usize {
        if self.j == usize::MAX {
            0
        } else {
            self.measure()
        }
    }

    fn stem_has_vowel(&self) -> bool {
        self.j != usize::MAX && self.vowel_in_stem()
    }

    fn step1ab(&mut self) {
        if self.b[self.k] == b's' {
            if self.ends("sses") {
                self.k -= 2;
            } else if self.ends("ies") {
                self.set_to("i");
            } else if self.b[self.k - 1] != b's' {
                self.k -= 1;
            }
        }
        if self.ends("eed") {
            if self.stem_measure() > 0 {
                self.k -= 1;
            }
        } else if (self.ends("ed") || self.ends("ing")) && self.stem_has_vowel() {
            self.k = self.j;
            if self.ends("at") {
                self.set_to("ate");
            } else if self.ends("bl") {
                self.set_to("ble");
            } else if self.ends("iz") {
                self.set_to("ize");
            } else if self.double_cons(self.k) {
                self.k -= 1;
                if matches!(self.b[self.k], b'l' | b's' | b'z') {
                    self.k += 1;
                }
            } else if self.stem_measure() == 1 && self.cvc(self.k) {
                self.set_to("e");
            }
        }
    }

    fn step1c(&mut self) {
        if self.ends("y") && self.stem_has_vowel() {
            self.b[self.k] = b'i';
        }
    }

    fn try_rules(&mut self, rules: &[(&str, &str)]) {
        for (suffix, replacement) in rules {
            if self.ends(suffix) {
                self.replace_if_measured(replacement);
                return;
            }
        }
    }

    fn step2(&mut self) {
        let rules: &[(&str, &str)] = match self.b[self.k - 1] {
            b'a' => &[("ational", "ate"), ("tional", "tion")],
            b'c' => &[("enci", "ence"), ("anci", "ance")],
            b'e' => &[("izer", "ize")],
            b'l' => &[("bli", "ble"), ("alli", "al"), ("entli", "ent"), ("eli", "e"), ("ousli", "ous")],
            b'o' => &[("ization", "ize"), ("ation", "ate"), ("ator", "ate")],
            b's' => &[("alism", "al"), ("iveness", "ive"), ("fulness", "ful"), ("ousness", "ous")],
            b't' => &[("aliti", "al"), ("iviti", "ive"), ("biliti", "ble")],
            b'g' => &[("logi", "log")],
            _ => return,
        };
        self.try_rules(rules);
    }

    fn step3(&mut self) {
        let rules: &[(&str, &str)] = match self.b[self.k] {
            b'e' => &[("icate", "ic"), ("ative", ""), ("alize", "al")],
            b'i' => &[("iciti", "ic")],
            b'l' => &[("ical", "ic"), ("ful", "")],
            b's' => &[("ness", "")],
            _ => return,
        };
        self.try_rules(rules);
    }

    fn step4(&mut self) {
        let suffixes: &[&str] = match self.b[self.k - 1] {
            b'a' => &["al"],
            b'c' => &["ance", "ence"],
            b'e' => &["er"],
            b'i' => &["ic"],
            b'l' => &["able", "ible"],
            b'n' => &["ant", "ement", "ment", "ent"],
            b'o' => {
                if self.ends("ion")
                    && self.j != usize::MAX
                    && matches!(self.b[self.j], b's' | b't')
                {
                    self.drop_if_long();
                    return;
                }
                &["ou"]
            }
            b's' => &["ism"],
            b't' => &["ate", "iti"],
            b'u' => &["ous"],
            b'v' => &["ive"],
            b'z' => &["ize"],
            _ => return,
        };
        if suffixes.iter().any(|s| self.ends(s)) {
            self.drop_if_long();
        }
    }

    fn drop_if_long(&mut self) {
        if self.stem_measure() > 1 {
            self.k = self.j;
        }
    }

    fn step5(&mut self) {
        self.j = self.k;
        if self.b[self.k] == b'e' {
            let a = self.measure();
            if a > 1 || (a == 1 && !self.cvc(self.k - 1)) {
                self.k -= 1;
            }
        }
        if self.b[self.k] == b'l' && self.double_cons(self.k) && self.measure() > 1 {
            self.k -= 1;
        }
    }
}

/// Porter measure of a whole word.
pub(crate) fn measure_of(word: &str) -> usize {
    if word.is_empty() {
        return 0;
    }
    Word::new(word).measure()
}

/// Whether the word ends consonant-vowel-consonant (last letter not w/x/y).
pub(crate) fn ends_cvc(word: &str) -> bool {
    !word.is_empty() && Word::new(word).cvc(word.len() - 1)
}

/// Porter stem of a lowercase token. Tokens of length two or less are
/// returned unchanged; digits and `_` count as consonants.
pub fn stem_token(token: &str) -> String {
    if token.len() <= 2 || !token.is_ascii() {
        return token.to_string();
    }
    let mut w = Word::new(token);
    w.step1ab();
    if w.k > 0 {
        w.step1c();
        w.step2();
        w.step3();
        w.step4();
        w.step5();
    }
    w.into_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classic_examples() {
        let cases = [
            ("caresses", "caress"),
            ("ponies", "poni"),
            ("ties", "ti"),
            ("caress", "caress"),
            ("cats", "cat"),
            ("feed", "feed"),
            ("agreed", "agre"),
            ("plastered", "plaster"),
            ("bled", "bled"),
            ("motoring", "motor"),
            ("sing", "sing"),
            ("conflated", "conflat"),
            ("troubled", "troubl"),
            ("sized", "size"),
            ("hopping", "hop"),
            ("falling", "fall"),
            ("filing", "file"),
            ("happy", "happi"),
            ("sky", "sky"),
            ("relational", "relat"),
            ("generalizations", "gener"),
            ("oscillators", "oscil"),
            ("payment", "payment"),
            ("paying", "pai"),
            ("pay", "pai"),
        ];
        for (input, expected) in cases {
            assert_eq!(stem_token(input), expected, "stem({input})");
        }
    }

    #[test]
    fn short_tokens_unchanged() {
        assert_eq!(stem_token("a"), "a");
        assert_eq!(stem_token("is"), "is");
        assert_eq!(stem_token(""), "");
    }

    #[test]
    fn digits_are_consonants() {
        assert_eq!(stem_token("q2s"), "q2");
        assert_eq!(stem_token("covid19"), "covid19");
    }
}

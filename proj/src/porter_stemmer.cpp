#include "phishscan/porter_stemmer.hpp"

#include <cstring>

// Straight transcription of the original algorithm description
// (An algorithm for suffix stripping, M.F. Porter, 1980).

namespace phishscan {

namespace {

bool is_vowel(const std::string& w, std::size_t i) {
    char c = w[i];
    if (c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u') return true;
    if (c == 'y') return i == 0 ? false : !is_vowel(w, i - 1);
    return false;
}

// measure m of the stem w: [C](VC){m}[V]
int measure(const std::string& w) {
    int m = 0;
    std::size_t i = 0, n = w.size();
    while (i < n && !is_vowel(w, i)) ++i;
    while (i < n) {
        while (i < n && is_vowel(w, i)) ++i;
        if (i >= n) break;
        while (i < n && !is_vowel(w, i)) ++i;
        ++m;
    }
    return m;
}

bool contains_vowel(const std::string& w) {
    for (std::size_t i = 0; i < w.size(); ++i)
        if (is_vowel(w, i)) return true;
    return false;
}

bool double_consonant(const std::string& w) {
    std::size_t n = w.size();
    if (n < 2) return false;
    return w[n - 1] == w[n - 2] && !is_vowel(w, n - 1);
}

// *o: stem ends cvc where the final c is not w, x or y
bool ends_cvc(const std::string& w) {
    std::size_t n = w.size();
    if (n < 3) return false;
    if (is_vowel(w, n - 1) || !is_vowel(w, n - 2) || is_vowel(w, n - 3))
        return false;
    char c = w[n - 1];
    return c != 'w' && c != 'x' && c != 'y';
}

bool ends_with(const std::string& w, const char* suffix) {
    std::size_t len = std::strlen(suffix);
    if (w.size() < len) return false;
    return w.compare(w.size() - len, len, suffix) == 0;
}

// replace suffix when the remaining stem has measure > min_m
bool replace_if(std::string& w, const char* suffix, const char* repl, int min_m) {
    if (!ends_with(w, suffix)) return false;
    std::string stem = w.substr(0, w.size() - std::strlen(suffix));
    if (measure(stem) > min_m) w = stem + repl;
    return true; // suffix matched, stop scanning this rule group
}

void step1a(std::string& w) {
    if (ends_with(w, "sses")) w.erase(w.size() - 2);
    else if (ends_with(w, "ies")) w.erase(w.size() - 2);
    else if (ends_with(w, "ss")) {}
    else if (ends_with(w, "s")) w.erase(w.size() - 1);
}

void step1b(std::string& w) {
    bool cleanup = false;
    if (ends_with(w, "eed")) {
        std::string stem = w.substr(0, w.size() - 3);
        if (measure(stem) > 0) w.erase(w.size() - 1);
    } else if (ends_with(w, "ed")) {
        std::string stem = w.substr(0, w.size() - 2);
        if (contains_vowel(stem)) { w = stem; cleanup = true; }
    } else if (ends_with(w, "ing")) {
        std::string stem = w.substr(0, w.size() - 3);
        if (contains_vowel(stem)) { w = stem; cleanup = true; }
    }
    if (cleanup) {
        if (ends_with(w, "at") || ends_with(w, "bl") || ends_with(w, "iz")) {
            w += 'e';
        } else if (double_consonant(w) && !ends_with(w, "l") &&
                   !ends_with(w, "s") && !ends_with(w, "z")) {
            w.erase(w.size() - 1);
        } else if (measure(w) == 1 && ends_cvc(w)) {
            w += 'e';
        }
    }
}

void step1c(std::string& w) {
    if (ends_with(w, "y") && contains_vowel(w.substr(0, w.size() - 1)))
        w.back() = 'i';
}

void step2(std::string& w) {
    if (w.size() < 3) return;
    switch (w[w.size() - 2]) {
    case 'a':
        if (replace_if(w, "ational", "ate", 0)) return;
        if (replace_if(w, "tional", "tion", 0)) return;
        break;
    case 'c':
        if (replace_if(w, "enci", "ence", 0)) return;
        if (replace_if(w, "anci", "ance", 0)) return;
        break;
    case 'e':
        if (replace_if(w, "izer", "ize", 0)) return;
        break;
    case 'l':
        if (replace_if(w, "abli", "able", 0)) return;
        if (replace_if(w, "alli", "al", 0)) return;
        if (replace_if(w, "entli", "ent", 0)) return;
        if (replace_if(w, "eli", "e", 0)) return;
        if (replace_if(w, "ousli", "ous", 0)) return;
        break;
    case 'o':
        if (replace_if(w, "ization", "ize", 0)) return;
        if (replace_if(w, "ation", "ate", 0)) return;
        if (replace_if(w, "ator", "ate", 0)) return;
        break;
    case 's':
        if (replace_if(w, "alism", "al", 0)) return;
        if (replace_if(w, "iveness", "ive", 0)) return;
        if (replace_if(w, "fulness", "ful", 0)) return;
        if (replace_if(w, "ousness", "ous", 0)) return;
        break;
    case 't':
        if (replace_if(w, "aliti", "al", 0)) return;
        if (replace_if(w, "iviti", "ive", 0)) return;
        if (replace_if(w, "biliti", "ble", 0)) return;
        break;
    }
}

void step3(std::string& w) {
    if (w.empty()) return;
    switch (w.back()) {
    case 'e':
        if (replace_if(w, "icate", "ic", 0)) return;
        if (replace_if(w, "ative", "", 0)) return;
        if (replace_if(w, "alize", "al", 0)) return;
        break;
    case 'i':
        if (replace_if(w, "iciti", "ic", 0)) return;
        break;
    case 'l':
        if (replace_if(w, "ical", "ic", 0)) return;
        if (replace_if(w, "ful", "", 0)) return;
        break;
    case 's':
        if (replace_if(w, "ness", "", 0)) return;
        break;
    }
}

void step4(std::string& w) {
    static const char* suffixes[] = {
        "al", "ance", "ence", "er", "ic", "able", "ible", "ant", "ement",
        "ment", "ent", "ou", "ism", "ate", "iti", "ous", "ive", "ize"};
    for (const char* s : suffixes) {
        if (!ends_with(w, s)) continue;
        std::string stem = w.substr(0, w.size() - std::strlen(s));
        if (std::strcmp(s, "ent") == 0 && (ends_with(w, "ement") || ends_with(w, "ment")))
            continue; // longer variants handled by their own entries
        if (measure(stem) > 1) w = stem;
        return;
    }
    // (m>1 and (*S or *T)) ION ->
    if (ends_with(w, "ion")) {
        std::string stem = w.substr(0, w.size() - 3);
        if (!stem.empty() && (stem.back() == 's' || stem.back() == 't') &&
            measure(stem) > 1)
            w = stem;
    }
}

void step5(std::string& w) {
    if (ends_with(w, "e")) {
        std::string stem = w.substr(0, w.size() - 1);
        int m = measure(stem);
        if (m > 1 || (m == 1 && !ends_cvc(stem))) w = stem;
    }
    if (double_consonant(w) && w.back() == 'l' && measure(w) > 1)
        w.erase(w.size() - 1);
}

} // namespace

std::string porter_stem(const std::string& word) {
    if (word.size() <= 2) return word;
    std::string w = word;
    step1a(w);
    step1b(w);
    step1c(w);
    step2(w);
    step3(w);
    step4(w);
    step5(w);
    return w;
}

} // namespace phishscan

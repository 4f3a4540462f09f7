#include "hottopics/porter_stemmer.hpp"

namespace hottopics {

namespace {

// Works on b[0..k]. `j` marks the end of the stem left by the last
// successful ends() call.
class PorterStemmer {
public:
    explicit PorterStemmer(std::string_view word)
        : b_(word), k_(static_cast<int>(word.size()) - 1) {}

    std::string run() {
        if (k_ <= 1) return b_;
        step1ab();
        if (k_ > 0) {
            step1c();
            step2();
            step3();
            step4();
            step5();
        }
        return b_.substr(0, static_cast<std::size_t>(k_ + 1));
    }

private:
    bool cons(int i) const {
        switch (b_[static_cast<std::size_t>(i)]) {
            case 'a': case 'e': case 'i': case 'o': case 'u':
                return false;
            case 'y':
                return i == 0 ? true : !cons(i - 1);
            default:
                return true;
        }
    }

    // Number of VC sequences in b[0..j].
    int measure() const {
        int n = 0;
        int i = 0;
        while (true) {
            if (i > j_) return n;
            if (!cons(i)) break;
            ++i;
        }
        ++i;
        while (true) {
            while (true) {
                if (i > j_) return n;
                if (cons(i)) break;
                ++i;
            }
            ++i;
            ++n;
            while (true) {
                if (i > j_) return n;
                if (!cons(i)) break;
                ++i;
            }
            ++i;
        }
    }

    bool vowel_in_stem() const {
        for (int i = 0; i <= j_; ++i)
            if (!cons(i)) return true;
        return false;
    }

    bool double_consonant(int j) const {
        if (j < 1) return false;
        if (b_[static_cast<std::size_t>(j)] != b_[static_cast<std::size_t>(j - 1)]) return false;
        return cons(j);
    }

    // consonant-vowel-consonant ending at i, last consonant not w, x or y.
    bool cvc(int i) const {
        if (i < 2 || !cons(i) || cons(i - 1) || !cons(i - 2)) return false;
        const char ch = b_[static_cast<std::size_t>(i)];
        return ch != 'w' && ch != 'x' && ch != 'y';
    }

    bool ends(std::string_view s) {
        const int len = static_cast<int>(s.size());
        if (len > k_ + 1) return false;
        if (std::string_view(b_).substr(static_cast<std::size_t>(k_ - len + 1),
                                        static_cast<std::size_t>(len)) != s)
            return false;
        j_ = k_ - len;
        return true;
    }

    void set_to(std::string_view s) {
        b_.replace(static_cast<std::size_t>(j_ + 1), std::string::npos, s);
        k_ = j_ + static_cast<int>(s.size());
    }

    void replace_if_measured(std::string_view s) {
        if (measure() > 0) set_to(s);
    }

    char at(int i) const { return b_[static_cast<std::size_t>(i)]; }

    // Plurals and -ed / -ing.
    void step1ab() {
        if (at(k_) == 's') {
            if (ends("sses")) {
                k_ -= 2;
            } else if (ends("ies")) {
                set_to("i");
            } else if (at(k_ - 1) != 's') {
                --k_;
            }
        }
        if (ends("eed")) {
            if (measure() > 0) --k_;
        } else if ((ends("ed") || ends("ing")) && vowel_in_stem()) {
            k_ = j_;
            if (ends("at")) {
                set_to("ate");
            } else if (ends("bl")) {
                set_to("ble");
            } else if (ends("iz")) {
                set_to("ize");
            } else if (double_consonant(k_)) {
                --k_;
                const char ch = at(k_);
                if (ch == 'l' || ch == 's' || ch == 'z') ++k_;
            } else if (measure() == 1 && cvc(k_)) {
                set_to("e");
            }
        }
    }

    // Terminal y -> i when there is another vowel in the stem.
    void step1c() {
        if (ends("y") && vowel_in_stem()) b_[static_cast<std::size_t>(k_)] = 'i';
    }

    struct Rule {
        std::string_view suffix;
        std::string_view replacement;
    };

    template <std::size_t N>
    void apply_first(const Rule (&rules)[N]) {
        for (const auto& r : rules) {
            if (ends(r.suffix)) {
                replace_if_measured(r.replacement);
                return;
            }
        }
    }

    // Double suffixes to single ones.
    void step2() {
        if (k_ < 1) return;
        switch (at(k_ - 1)) {
            case 'a': {
                static constexpr Rule rules[] = {{"ational", "ate"}, {"tional", "tion"}};
                apply_first(rules);
                break;
            }
            case 'c': {
                static constexpr Rule rules[] = {{"enci", "ence"}, {"anci", "ance"}};
                apply_first(rules);
                break;
            }
            case 'e': {
                static constexpr Rule rules[] = {{"izer", "ize"}};
                apply_first(rules);
                break;
            }
            case 'l': {
                static constexpr Rule rules[] = {
                    {"bli", "ble"}, {"alli", "al"}, {"entli", "ent"}, {"eli", "e"}, {"ousli", "ous"}};
                apply_first(rules);
                break;
            }
            case 'o': {
                static constexpr Rule rules[] = {
                    {"ization", "ize"}, {"ation", "ate"}, {"ator", "ate"}};
                apply_first(rules);
                break;
            }
            case 's': {
                static constexpr Rule rules[] = {
                    {"alism", "al"}, {"iveness", "ive"}, {"fulness", "ful"}, {"ousness", "ous"}};
                apply_first(rules);
                break;
            }
            case 't': {
                static constexpr Rule rules[] = {{"aliti", "al"}, {"iviti", "ive"}, {"biliti", "ble"}};
                apply_first(rules);
                break;
            }
            case 'g': {
                static constexpr Rule rules[] = {{"logi", "log"}};
                apply_first(rules);
                break;
            }
            default:
                break;
        }
    }

    // -ic-, -full, -ness etc.
    void step3() {
        switch (at(k_)) {
            case 'e': {
                static constexpr Rule rules[] = {{"icate", "ic"}, {"ative", ""}, {"alize", "al"}};
                apply_first(rules);
                break;
            }
            case 'i': {
                static constexpr Rule rules[] = {{"iciti", "ic"}};
                apply_first(rules);
                break;
            }
            case 'l': {
                static constexpr Rule rules[] = {{"ical", "ic"}, {"ful", ""}};
                apply_first(rules);
                break;
            }
            case 's': {
                static constexpr Rule rules[] = {{"ness", ""}};
                apply_first(rules);
                break;
            }
            default:
                break;
        }
    }

    // Strips -ant, -ence etc. in context <c>vcvc<v>.
    void step4() {
        if (k_ < 1) return;
        auto any = [this](std::initializer_list<std::string_view> suffixes) {
            for (auto s : suffixes)
                if (ends(s)) return true;
            return false;
        };
        bool matched = false;
        switch (at(k_ - 1)) {
            case 'a': matched = any({"al"}); break;
            case 'c': matched = any({"ance", "ence"}); break;
            case 'e': matched = any({"er"}); break;
            case 'i': matched = any({"ic"}); break;
            case 'l': matched = any({"able", "ible"}); break;
            case 'n': matched = any({"ant", "ement", "ment", "ent"}); break;
            case 'o':
                if (ends("ion") && j_ >= 0 && (at(j_) == 's' || at(j_) == 't'))
                    matched = true;
                else
                    matched = ends("ou");
                break;
            case 's': matched = any({"ism"}); break;
            case 't': matched = any({"ate", "iti"}); break;
            case 'u': matched = any({"ous"}); break;
            case 'v': matched = any({"ive"}); break;
            case 'z': matched = any({"ize"}); break;
            default: break;
        }
        if (matched && measure() > 1) k_ = j_;
    }

    // Final -e and -ll.
    void step5() {
        j_ = k_;
        if (at(k_) == 'e') {
            const int m = measure();
            if (m > 1 || (m == 1 && !cvc(k_ - 1))) --k_;
        }
        if (at(k_) == 'l' && double_consonant(k_) && measure() > 1) --k_;
    }

    std::string b_;
    int k_;
    int j_ = 0;
};

}  // namespace

std::string stem_word(std::string_view word) {
    return PorterStemmer(word).run();
}

}  // namespace hottopics

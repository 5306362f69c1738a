#include "kvassoc/serialize.hpp"

#include <fstream>
#include <sstream>

namespace kvassoc::io {

namespace {

[[noreturn]] void fail(const std::string& what) { throw FormatError(what); }

const json& field(const json& j, const char* key) {
    if (!j.is_object()) fail("expected a JSON object");
    auto it = j.find(key);
    if (it == j.end()) fail(std::string("missing field '") + key + "'");
    return *it;
}

int int_field(const json& j, const char* key, int lo, int hi) {
    const json& v = field(j, key);
    if (!v.is_number_integer()) fail(std::string("field '") + key + "' must be an integer");
    long long x = v.get<long long>();
    if (x < lo || x > hi) fail(std::string("field '") + key + "' out of range");
    return static_cast<int>(x);
}

bool bool_field(const json& j, const char* key) {
    const json& v = field(j, key);
    if (!v.is_boolean()) fail(std::string("field '") + key + "' must be a boolean");
    return v.get<bool>();
}

const json& array_field(const json& j, const char* key) {
    const json& v = field(j, key);
    if (!v.is_array()) fail(std::string("field '") + key + "' must be an array");
    return v;
}

Rational rational(const json& v) {
    if (!v.is_string()) fail("coefficients must be \"p/q\" strings");
    const std::string& s = v.get_ref<const std::string&>();
    Rational r;
    try {
        r = Rational::parse(s);
    } catch (const std::invalid_argument&) {
        fail("malformed rational '" + s + "'");
    }
    if (r.str() != s) fail("rational '" + s + "' is not in reduced p/q form");
    return r;
}

json word_json(Word w) {
    json a = json::array();
    for (int l : w.letters()) a.push_back(l + 1);
    return a;
}

Word word(const json& v, int letters, int cap) {
    if (!v.is_array()) fail("words must be arrays of letters");
    if (static_cast<int>(v.size()) > cap) fail("word longer than the cap");
    std::vector<int> ls;
    for (const json& x : v) {
        if (!x.is_number_integer()) fail("letters must be integers");
        long long l = x.get<long long>();
        if (l < 1 || l > letters) fail("letter out of range");
        ls.push_back(static_cast<int>(l) - 1);
    }
    return Word::from(ls);
}

template <class Terms>
json terms_json(const Terms& terms) {
    json out = json::array();
    for (const auto& [w, c] : terms) out.push_back(json::array({word_json(w), c.str()}));
    return out;
}

// terms in strictly increasing graded-lex order with nonzero coefficients
std::map<Word, Rational> terms(const json& j, int letters, int cap) {
    std::map<Word, Rational> out;
    std::optional<Word> last;
    for (const json& t : array_field(j, "terms")) {
        if (!t.is_array() || t.size() != 2) fail("each term must be [word, coefficient]");
        Word w = word(t[0], letters, cap);
        Rational c = rational(t[1]);
        if (c.is_zero()) fail("zero coefficient stored");
        if (last && !(*last < w)) fail("terms not in strictly increasing graded-lex order");
        last = w;
        out.emplace(w, c);
    }
    return out;
}

json header(int letters, int cap) { return json{{"letters", letters}, {"cap", cap}}; }

constexpr int kMaxCap = Word::kMaxLength;

int letters_of(const json& j) { return int_field(j, "letters", 1, Word::kMaxLetters); }
int cap_of(const json& j) { return int_field(j, "cap", 0, kMaxCap); }

}  // namespace

json to_json(const NCSeries& z) {
    json j = header(z.letters(), z.cap());
    j["terms"] = terms_json(z.terms());
    return j;
}

NCSeries ncseries_from_json(const json& j) {
    int n = letters_of(j), cap = cap_of(j);
    return NCSeries::from_terms(n, cap, terms(j, n, cap));
}

json to_json(const LieElement& a) {
    json j = header(a.letters(), a.cap());
    j["basis"] = "lyndon";
    j["terms"] = terms_json(a.coords());
    return j;
}

LieElement lie_from_json(const json& j) {
    if (field(j, "basis") != "lyndon") fail("Lie payloads must use \"basis\": \"lyndon\"");
    int n = letters_of(j), cap = cap_of(j);
    try {
        return LieElement::from_coords(n, cap, terms(j, n, cap));
    } catch (const std::invalid_argument& e) {
        fail(e.what());
    }
}

json to_json(const TnElement& a) {
    json j{{"strands", a.strands()}, {"cap", a.cap()}, {"tail", to_json(a.level(a.strands()))}};
    if (a.strands() > 2) {
        TnElement rest(a.strands() - 1, a.cap());
        for (int k = 2; k < a.strands(); ++k) rest.level(k) = a.level(k);
        j["rest"] = to_json(rest);
    }
    return j;
}

TnElement tn_from_json(const json& j) {
    int n = int_field(j, "strands", 2, Word::kMaxLetters + 1), cap = cap_of(j);
    TnElement out(n, cap);
    LieElement tail = lie_from_json(field(j, "tail"));
    if (tail.letters() != n - 1 || tail.cap() != cap) fail("t_n tail has the wrong shape");
    out.level(n) = tail;
    if (n > 2) {
        TnElement rest = tn_from_json(field(j, "rest"));
        if (rest.strands() != n - 1 || rest.cap() != cap) fail("t_n rest has the wrong shape");
        for (int k = 2; k < n; ++k) out.level(k) = rest.level(k);
    } else if (j.contains("rest")) {
        fail("t_2 has no rest component");
    }
    return out;
}

namespace {

json parts_json(int letters, int cap, const std::vector<LieElement>& parts, const char* key) {
    json j = header(letters, cap);
    j["normalized"] = true;
    json a = json::array();
    for (const auto& p : parts) a.push_back(to_json(p));
    j[key] = a;
    return j;
}

std::vector<LieElement> parts_from(const json& j, const char* key, int letters, int cap) {
    const json& a = array_field(j, key);
    if (static_cast<int>(a.size()) != letters) fail(std::string("'") + key + "' needs one entry per letter");
    std::vector<LieElement> out;
    for (const json& p : a) {
        LieElement e = lie_from_json(p);
        if (e.letters() != letters || e.cap() != cap) fail("component has the wrong letters or cap");
        out.push_back(e);
    }
    return out;
}

}  // namespace

json to_json(const TangDer& u) { return parts_json(u.letters(), u.cap(), u.parts(), "parts"); }

TangDer tder_from_json(const json& j) {
    int n = letters_of(j), cap = cap_of(j);
    bool normalized = bool_field(j, "normalized");
    TangDer u(parts_from(j, "parts", n, cap));
    if (normalized && !(to_json(u) == j)) fail("\"normalized\": true but parts carry x_k terms");
    return u;
}

json to_json(const TangAut& g) { return parts_json(g.letters(), g.cap(), g.exponents(), "exponents"); }

TangAut taut_from_json(const json& j) {
    int n = letters_of(j), cap = cap_of(j);
    bool normalized = bool_field(j, "normalized");
    TangAut g = TangAut::from_exponents(parts_from(j, "exponents", n, cap));
    if (normalized && !(to_json(g) == j)) fail("\"normalized\": true but exponents carry x_k terms");
    return g;
}

json to_json(const TraceElement& t) {
    json j = header(t.letters(), t.cap());
    j["cyclic"] = true;
    j["terms"] = terms_json(t.terms());
    return j;
}

TraceElement trace_from_json(const json& j) {
    if (!bool_field(j, "cyclic")) fail("trace payloads must have \"cyclic\": true");
    int n = letters_of(j), cap = cap_of(j);
    TraceElement out(n, cap);
    for (const auto& [w, c] : terms(j, n, cap)) {
        if (!(w.least_rotation() == w)) fail("cyclic word " + w.str() + " is not its least rotation");
        out.add_term(w, c);
    }
    return out;
}

json to_json(const PowerSeries& r) {
    json a = json::array();
    for (const auto& c : r.coeffs()) a.push_back(c.str());
    return a;
}

PowerSeries power_series_from_json(const json& j) {
    if (!j.is_array() || j.empty()) fail("power series must be a nonempty coefficient list");
    std::vector<Rational> c;
    for (const json& x : j) c.push_back(rational(x));
    int cap = static_cast<int>(c.size()) - 1;
    return PowerSeries(cap, std::move(c));
}

json to_json(const Associator& phi) {
    json j = to_json(phi.log);
    j["even"] = phi.even;
    json z = json::array();
    for (const auto& c : gamma_of_phi(phi).zeta) z.push_back(c.str());
    j["zeta"] = z;
    return j;
}

Associator associator_from_json(const json& j, bool verify_zeta) {
    Associator phi{lie_from_json(j), bool_field(j, "even")};
    if (phi.log.letters() != 2) fail("associators live on two letters");
    if (verify_zeta && j.contains("zeta")) {
        const json& z = array_field(j, "zeta");
        auto expect = gamma_of_phi(phi).zeta;
        if (z.size() != expect.size()) fail("zeta list has the wrong length");
        for (std::size_t k = 0; k < z.size(); ++k)
            if (!(rational(z[k]) == expect[k])) fail("zeta(" + std::to_string(k) + ") disagrees with the series");
    }
    return phi;
}

json to_json(const KVSolution& s) { return json{{"mu", to_json(s.mu)}, {"duflo", to_json(s.duflo)}}; }

KVSolution kv_solution_from_json(const json& j) {
    return {taut_from_json(field(j, "mu")), power_series_from_json(field(j, "duflo"))};
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

json parse(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        fail(std::string("invalid JSON: ") + e.what());
    }
}

json read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail("cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse(ss.str());
}

void write_file(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) fail("cannot write '" + path + "'");
    out << dump(j);
    if (!out) fail("write to '" + path + "' failed");
}

}  // namespace kvassoc::io

#include "quadcode/codefile.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>
#include <vector>

#include "json.hpp"

namespace quadcode {

namespace {

using ordered_json = nlohmann::ordered_json;

bool has_provenance(const std::vector<CodePlane>& planes) {
    return std::any_of(planes.begin(), planes.end(),
                       [](const CodePlane& p) { return p.provenance != Provenance::Unspecified; });
}

std::vector<CodePlane> sorted_planes(const Code& c) {
    auto planes = c.planes;
    std::sort(planes.begin(), planes.end());
    return planes;
}

std::string datum_token(const std::string& d) {
    if (d.empty()) return "-";
    if (std::any_of(d.begin(), d.end(), [](char ch) { return std::isspace(static_cast<unsigned char>(ch)); }))
        throw std::invalid_argument("plane datum contains whitespace: " + d);
    return d;
}

std::string serialize_text(const CodeFile& f, const Field& F) {
    const auto planes = sorted_planes(f.code);
    const bool prov = has_provenance(planes);
    std::ostringstream os;
    os << "format " << kCodeFileVersion << '\n'
       << "q " << F.order() << '\n'
       << "p " << F.characteristic() << '\n'
       << "k " << F.degree() << '\n'
       << "modulus";
    for (Elem c : F.modulus()) os << ' ' << c;
    os << '\n'
       << "n 6\n"
       << "dim 3\n"
       << "M " << planes.size() << '\n'
       << "construction " << f.construction << '\n';
    for (const auto& p : planes) {
        const auto flat = p.space.flat();
        for (std::size_t i = 0; i < flat.size(); ++i) os << (i ? " " : "") << flat[i];
        if (prov) os << ' ' << to_string(p.provenance) << ' ' << datum_token(p.datum);
        os << '\n';
    }
    return os.str();
}

std::string serialize_json(const CodeFile& f, const Field& F) {
    const auto planes = sorted_planes(f.code);
    const bool prov = has_provenance(planes);
    ordered_json j;
    j["format"] = kCodeFileVersion;
    j["q"] = F.order();
    j["p"] = F.characteristic();
    j["k"] = F.degree();
    j["modulus"] = std::vector<Elem>(F.modulus().begin(), F.modulus().end());
    j["n"] = 6;
    j["dim"] = 3;
    j["M"] = planes.size();
    j["construction"] = f.construction;
    ordered_json arr = ordered_json::array();
    for (const auto& p : planes) {
        ordered_json rec;
        ordered_json rows = ordered_json::array();
        for (std::size_t r = 0; r < p.space.rank(); ++r) rows.push_back(p.space.row(r));
        rec["rows"] = rows;
        if (prov) {
            rec["provenance"] = std::string(to_string(p.provenance));
            rec["datum"] = datum_token(p.datum);
        }
        arr.push_back(rec);
    }
    j["planes"] = arr;
    return j.dump(1) + "\n";
}

std::uint64_t parse_uint(std::string_view s, std::string_view what) {
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
        throw ParseError("bad integer for " + std::string(what) + ": '" + std::string(s) + "'");
    return v;
}

std::vector<std::string_view> split_ws(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
        std::size_t j = i;
        while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
        if (j > i) out.push_back(line.substr(i, j - i));
        i = j;
    }
    return out;
}

struct Header {
    unsigned q = 0, p = 0, k = 0;
    std::vector<Elem> modulus;
    std::uint64_t n = 0, dim = 0, M = 0;
    std::string construction;
};

FieldPtr check_header(const Header& h) {
    unsigned p = 0, k = 0;
    if (!prime_power(h.q, p, k)) throw ParseError("q is not a prime power: " + std::to_string(h.q));
    if (p != h.p || k != h.k) throw ParseError("p and k do not match q");
    FieldPtr F;
    try {
        F = Field::of_order(h.q);
    } catch (const std::exception& e) {
        throw ParseError(std::string("unsupported field: ") + e.what());
    }
    if (!std::equal(h.modulus.begin(), h.modulus.end(), F->modulus().begin(), F->modulus().end()))
        throw ParseError("modulus does not match the canonical modulus of GF(" + std::to_string(h.q) + ")");
    if (h.n != 6 || h.dim != 3) throw ParseError("only planes of PG(5, q) are supported");
    return F;
}

CodePlane make_plane(const Field& F, const std::vector<Elem>& entries, std::string_view prov, std::string_view datum) {
    for (Elem x : entries) {
        if (x >= F.order()) throw ParseError("field element out of range: " + std::to_string(x));
    }
    CodePlane cp;
    try {
        cp.space = Subspace::from_echelon(F, 6, entries);
        cp.provenance = provenance_from_string(prov);
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what());
    }
    if (cp.space.rank() != 3) throw ParseError("record is not a plane");
    cp.datum = datum == "-" ? std::string() : std::string(datum);
    return cp;
}

CodeFile parse_text(std::string_view text) {
    std::vector<std::string_view> lines;
    for (std::size_t i = 0; i < text.size();) {
        std::size_t j = text.find('\n', i);
        if (j == std::string_view::npos) j = text.size();
        lines.push_back(text.substr(i, j - i));
        i = j + 1;
    }
    while (!lines.empty() && split_ws(lines.back()).empty()) lines.pop_back();

    static constexpr std::string_view keys[] = {"format", "q", "p", "k", "modulus", "n", "dim", "M", "construction"};
    if (lines.size() < std::size(keys)) throw ParseError("truncated header");
    Header h;
    for (std::size_t i = 0; i < std::size(keys); ++i) {
        const auto tok = split_ws(lines[i]);
        if (tok.empty() || tok[0] != keys[i])
            throw ParseError("expected header key '" + std::string(keys[i]) + "' on line " + std::to_string(i + 1));
        if (keys[i] == "modulus") {
            for (std::size_t t = 1; t < tok.size(); ++t) h.modulus.push_back(parse_uint(tok[t], "modulus"));
            continue;
        }
        if (tok.size() != 2) throw ParseError("header line '" + std::string(keys[i]) + "' needs one value");
        if (keys[i] == "construction") {
            h.construction = std::string(tok[1]);
            continue;
        }
        const std::uint64_t v = parse_uint(tok[1], keys[i]);
        if (keys[i] == "format" && v != kCodeFileVersion) throw ParseError("unsupported format version");
        if (keys[i] == "q") h.q = static_cast<unsigned>(v);
        if (keys[i] == "p") h.p = static_cast<unsigned>(v);
        if (keys[i] == "k") h.k = static_cast<unsigned>(v);
        if (keys[i] == "n") h.n = v;
        if (keys[i] == "dim") h.dim = v;
        if (keys[i] == "M") h.M = v;
    }
    const FieldPtr F = check_header(h);

    CodeFile f;
    f.construction = h.construction;
    f.code.q = h.q;
    std::size_t width = 0;
    for (std::size_t i = std::size(keys); i < lines.size(); ++i) {
        const auto tok = split_ws(lines[i]);
        if (tok.size() != 18 && tok.size() != 20)
            throw ParseError("record on line " + std::to_string(i + 1) + " has " + std::to_string(tok.size()) +
                             " fields");
        if (width == 0) width = tok.size();
        if (tok.size() != width) throw ParseError("records disagree on the provenance column");
        std::vector<Elem> entries(18);
        for (std::size_t t = 0; t < 18; ++t) entries[t] = static_cast<Elem>(parse_uint(tok[t], "matrix entry"));
        f.code.planes.push_back(make_plane(*F, entries, width == 20 ? tok[18] : "-", width == 20 ? tok[19] : "-"));
    }
    if (f.code.planes.size() != h.M)
        throw ParseError("header declares " + std::to_string(h.M) + " records, found " +
                         std::to_string(f.code.planes.size()));
    return f;
}

CodeFile parse_json(std::string_view text) {
    try {
        const auto j = ordered_json::parse(text);
        if (j.at("format").get<int>() != kCodeFileVersion) throw ParseError("unsupported format version");
        Header h;
        h.q = j.at("q").get<unsigned>();
        h.p = j.at("p").get<unsigned>();
        h.k = j.at("k").get<unsigned>();
        h.modulus = j.at("modulus").get<std::vector<Elem>>();
        h.n = j.at("n").get<std::uint64_t>();
        h.dim = j.at("dim").get<std::uint64_t>();
        h.M = j.at("M").get<std::uint64_t>();
        h.construction = j.at("construction").get<std::string>();
        const FieldPtr F = check_header(h);
        CodeFile f;
        f.construction = h.construction;
        f.code.q = h.q;
        for (const auto& rec : j.at("planes")) {
            const auto rows = rec.at("rows").get<std::vector<std::vector<Elem>>>();
            std::vector<Elem> entries;
            for (const auto& r : rows) {
                if (r.size() != 6) throw ParseError("rows must have 6 entries");
                entries.insert(entries.end(), r.begin(), r.end());
            }
            if (rows.size() != 3) throw ParseError("record is not a plane");
            const std::string prov = rec.contains("provenance") ? rec["provenance"].get<std::string>() : "-";
            const std::string datum = rec.contains("datum") ? rec["datum"].get<std::string>() : "-";
            f.code.planes.push_back(make_plane(*F, entries, prov, datum));
        }
        if (f.code.planes.size() != h.M) throw ParseError("record count does not match M");
        return f;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("malformed JSON code file: ") + e.what());
    }
}

} // namespace

std::string serialize(const CodeFile& f, FileFormat fmt) {
    const FieldPtr F = Field::of_order(f.code.q);
    return fmt == FileFormat::Text ? serialize_text(f, *F) : serialize_json(f, *F);
}

CodeFile parse_code_file(std::string_view text) {
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) throw ParseError("empty code file");
    return text[first] == '{' ? parse_json(text) : parse_text(text);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad()) throw IoError("error reading " + path);
    return ss.str();
}

void write_file(const std::string& path, std::string_view contents) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + path + " for writing");
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    out.flush();
    if (!out) throw IoError("error writing " + path);
}

} // namespace quadcode

#include "ead/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "ead/errors.hpp"
#include "json.hpp"

namespace ead {

CorpusFormat detect_corpus_format(const std::string& path) {
    auto ends_with = [&](const char* suffix) {
        std::string s(suffix);
        return path.size() >= s.size() && path.compare(path.size() - s.size(), s.size(), s) == 0;
    };
    if (ends_with(".jsonl") || ends_with(".ndjson")) return CorpusFormat::JsonLines;
    return CorpusFormat::Plain;
}

CorpusLines read_corpus(const std::string& path, const CorpusReadOptions& options) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open corpus file: " + path);
    CorpusLines out;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (options.format == CorpusFormat::Plain) {
            out.lines.push_back(line);
            continue;
        }
        std::string reason;
        auto j = nlohmann::json::parse(line, nullptr, false);
        if (j.is_discarded()) {
            reason = "not valid JSON";
        } else if (!j.contains("response") || !j["response"].is_string()) {
            reason = "missing string field 'response'";
        } else {
            out.lines.push_back(j["response"].get<std::string>());
            continue;
        }
        std::string where = path + ":" + std::to_string(lineno) + ": " + reason;
        if (!options.lenient) throw IoError(where + " (use --lenient to skip)");
        out.skipped.push_back(where);
    }
    if (in.bad()) throw IoError("read failure on corpus file: " + path);
    return out;
}

namespace {

std::vector<std::string> split_csv_row(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        char c = line[i];
        if (quoted) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') { cur += '"'; ++i; }
            else if (c == '"') quoted = false;
            else cur += c;
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    fields.push_back(cur);
    return fields;
}

}  // namespace

CsvTable read_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open CSV file: " + path);
    CsvTable table;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto fields = split_csv_row(line);
        if (lineno == 1) {
            table.columns = std::move(fields);
        } else {
            if (fields.size() != table.columns.size())
                throw IoError(path + ":" + std::to_string(lineno) + ": expected " +
                              std::to_string(table.columns.size()) + " fields, got " +
                              std::to_string(fields.size()));
            table.rows.push_back(std::move(fields));
        }
    }
    if (table.columns.empty()) throw IoError("empty CSV file: " + path);
    return table;
}

std::vector<double> CsvTable::numeric_column(const std::string& name) const {
    std::size_t idx = columns.size();
    for (std::size_t i = 0; i < columns.size(); ++i)
        if (columns[i] == name) { idx = i; break; }
    if (idx == columns.size()) {
        std::ostringstream msg;
        msg << "no column named '" << name << "'; available columns:";
        for (const auto& c : columns) msg << " " << c;
        throw IoError(msg.str());
    }
    std::vector<double> out;
    out.reserve(rows.size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
        const std::string& cell = rows[r][idx];
        double value;
        auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
        if (ec != std::errc{} || ptr != cell.data() + cell.size())
            throw IoError("non-numeric value '" + cell + "' in column '" + name + "' at row " +
                          std::to_string(r + 2));
        out.push_back(value);
    }
    return out;
}

}  // namespace ead

#pragma once

#include <string>
#include <unordered_map>
#include <vector>

namespace ead {

enum class CorpusFormat { Plain, JsonLines };  // JsonLines: field "response"

struct CorpusReadOptions {
    CorpusFormat format = CorpusFormat::Plain;
    bool lenient = false;  // skip unparseable lines (reported) instead of failing
};

struct CorpusLines {
    std::vector<std::string> lines;
    std::vector<std::string> skipped;  // "<path>:<lineno>: <reason>", lenient mode only
};

// Throws IoError on unreadable files or, without `lenient`, on the first bad line.
CorpusLines read_corpus(const std::string& path, const CorpusReadOptions& options = {});

CorpusFormat detect_corpus_format(const std::string& path);  // by extension

struct CsvTable {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;

    // Throws IoError on unknown names (message lists available columns) and
    // on non-numeric cells.
    std::vector<double> numeric_column(const std::string& name) const;
};

CsvTable read_csv(const std::string& path);

}  // namespace ead

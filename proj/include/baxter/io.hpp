#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "baxter/benzaid_lutz.hpp"
#include "baxter/measure.hpp"
#include "baxter/tauberian.hpp"

namespace baxter {

using json = nlohmann::json;

// Complex values serialize as [re, im]; CSV columns split Re/Im explicitly
// and print with round-trip precision so downstream plotting never parses
// complex literals.

std::string fmt_full(double v);  // shortest round-trip decimal

json to_json(cxd v);
cxd complex_from_json(const json& j, const std::string& context);

// MeasureSpec documents: a single {"type": ...} object or
// {"type": "sum", "parts": [...]}.
json to_json(const MeasureSpec& spec);
MeasureSpec measure_from_json(const json& j);

// Parameter documents:
//   {"type": "explicit", "alpha": [[re,im],...], "beta": [...]}
//   {"type": "power", "amp": a, "expo": p}
//   {"type": "example1", "epsilon": e, "c": c}
//   {"type": "example2", "gamma": g, "b": [[re,im],...], "lambda": [...]}
//   {"type": "from_moments", "measure": {...}, "count": N}
ParameterSequence parameters_from_json(const json& j);

json to_json(const ConvergenceReport& r);
json to_json(const SeriesDiag& d);
json to_json(const TauberianReport& r);
json to_json(const BoundaryReport& r);
json to_json(const RadialReport& r);
json to_json(const InterchangeReport& r);

// Minimal CSV writer: quoting-free numeric tables with a header row.
class CsvWriter {
  public:
    explicit CsvWriter(std::string path);
    void header(const std::vector<std::string>& cols);
    void row(const std::vector<std::string>& cells);
    void flush_to_disk();  // write is atomic at destruction otherwise
    ~CsvWriter();

    CsvWriter(const CsvWriter&) = delete;
    CsvWriter& operator=(const CsvWriter&) = delete;

  private:
    std::string path_;
    std::string buf_;
    bool written_ = false;
};

void write_moment_table_csv(const std::string& path, const MomentTable& table);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

}  // namespace baxter

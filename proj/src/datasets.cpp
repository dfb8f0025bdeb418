#include "phishscan/datasets.hpp"
#include "phishscan/errors.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <unordered_set>

namespace phishscan {

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> row;
    std::string field;
    bool in_quotes = false;
    bool field_started = false;

    auto end_field = [&] {
        row.push_back(field);
        field.clear();
        field_started = false;
    };
    auto end_row = [&] {
        end_field();
        rows.push_back(row);
        row.clear();
    };

    for (std::size_t i = 0; i < text.size(); ++i) {
        char c = text[i];
        if (in_quotes) {
            if (c == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    field.push_back('"');
                    ++i;
                } else {
                    in_quotes = false;
                }
            } else {
                field.push_back(c);
            }
        } else if (c == '"' && !field_started) {
            in_quotes = true;
            field_started = true;
        } else if (c == ',') {
            end_field();
        } else if (c == '\r') {
            // swallowed; \r\n handled at \n
        } else if (c == '\n') {
            end_row();
        } else {
            field.push_back(c);
            field_started = true;
        }
    }
    if (!field.empty() || field_started || !row.empty()) end_row();
    return rows;
}

UrlDataset load_url_dataset(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw IngestError("cannot open dataset " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    auto rows = parse_csv(ss.str());
    if (rows.empty()) throw IngestError("empty dataset file " + path);

    std::vector<std::string> header = rows.front();
    if (header.empty() || header.back() != "status")
        throw IngestError("dataset missing final status column");
    header.pop_back();
    FeatureSchema schema = FeatureSchema::from_header(header);

    if (rows.size() == 1) throw IngestError("dataset has a header but no rows");

    UrlDataset out{std::move(schema), {}};
    std::size_t n_cols = header.size() + 1;
    std::size_t per_class[2] = {0, 0};
    for (std::size_t r = 1; r < rows.size(); ++r) {
        const auto& cells = rows[r];
        if (cells.size() != n_cols)
            throw IngestError("ragged row " + std::to_string(r) + " in " + path);
        UrlFeatureVector vec;
        vec.values.reserve(header.size());
        for (std::size_t c = 0; c + 1 < cells.size(); ++c) {
            try {
                std::size_t used = 0;
                double v = std::stod(cells[c], &used);
                if (used != cells[c].size() || !std::isfinite(v))
                    throw std::invalid_argument(cells[c]);
                vec.values.push_back(v);
            } catch (const std::exception&) {
                throw IngestError("non-numeric cell '" + cells[c] + "' at row " +
                                  std::to_string(r));
            }
        }
        const std::string& status = cells.back();
        if (status == "legitimate") vec.label = kLabelLegitimate;
        else if (status == "phishing") vec.label = kLabelPhishing;
        else throw IngestError("unknown status '" + status + "' at row " +
                               std::to_string(r));
        per_class[static_cast<std::size_t>(*vec.label)]++;
        out.rows.push_back(std::move(vec));
    }

    // the reference dataset is balanced; enforce the 50/50 +-1% contract
    if (out.rows.size() == 11430) {
        double frac = static_cast<double>(per_class[1]) /
                      static_cast<double>(out.rows.size());
        if (std::abs(frac - 0.5) > 0.01)
            throw IngestError("reference dataset class balance off: " +
                              std::to_string(frac));
    }
    return out;
}

TextDataset load_text_dataset(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw IngestError("cannot open corpus " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    auto rows = parse_csv(ss.str());
    if (rows.empty()) throw IngestError("empty corpus file " + path);

    std::size_t start = 0;
    if (rows[0].size() >= 2 && rows[0][0] == "label") start = 1; // header
    if (rows.size() <= start) throw IngestError("corpus has no data rows");

    TextDataset out;
    std::unordered_set<std::string> seen;
    for (std::size_t r = start; r < rows.size(); ++r) {
        const auto& cells = rows[r];
        if (cells.size() < 2)
            throw IngestError("corpus row " + std::to_string(r) +
                              " lacks a label column");
        int label;
        if (cells[0] == "ham") label = 0;
        else if (cells[0] == "spam") label = 1;
        else throw IngestError("unknown label '" + cells[0] + "' at row " +
                               std::to_string(r));
        // texts containing commas arrive quoted; rejoin any unquoted extras
        std::string text = cells[1];
        for (std::size_t c = 2; c < cells.size(); ++c) text += "," + cells[c];
        seen.insert(text);
        out.rows.emplace_back(std::move(text), label);
    }
    out.unique_texts = seen.size();
    return out;
}

} // namespace phishscan

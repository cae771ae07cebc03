#include "lmtk/csv.hpp"

namespace lmtk::csv {

std::vector<std::vector<std::string>> parse(std::string_view text, char delim) {
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> row;
    std::string field;
    bool in_quotes = false;
    bool row_has_content = false;

    auto end_field = [&] {
        row.push_back(std::move(field));
        field.clear();
    };
    auto end_row = [&] {
        end_field();
        if (row_has_content || row.size() > 1 || !row.front().empty()) rows.push_back(std::move(row));
        row.clear();
        row_has_content = false;
    };

    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
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
            continue;
        }
        if (c == '"' && field.empty()) {
            in_quotes = true;
            row_has_content = true;
        } else if (c == delim) {
            end_field();
            row_has_content = true;
        } else if (c == '\n') {
            end_row();
        } else if (c == '\r') {
            // swallowed; '\n' ends the row
        } else {
            field.push_back(c);
            row_has_content = true;
        }
    }
    if (row_has_content || !field.empty() || !row.empty()) end_row();
    return rows;
}

char sniff_delimiter(std::string_view text) {
    const auto eol = text.find('\n');
    const auto first = text.substr(0, eol);
    return first.find('\t') != std::string_view::npos ? '\t' : ',';
}

std::string escape(std::string_view field, char delim) {
    if (field.find_first_of(std::string{delim, '"', '\n', '\r'}) == std::string_view::npos) {
        return std::string(field);
    }
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out.push_back('"');
        out.push_back(c);
    }
    out.push_back('"');
    return out;
}

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(b, e - b + 1));
}

}  // namespace lmtk::csv

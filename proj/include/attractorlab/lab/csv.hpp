#ifndef ATTRACTORLAB_LAB_CSV_HPP
#define ATTRACTORLAB_LAB_CSV_HPP

#include <cstdio>
#include <string>
#include <vector>

namespace attractorlab {

/// Line-oriented CSV builder with deterministic formatting: numbers are
/// printed with 12 significant digits, rows in insertion order.
class CsvBuilder {
  public:
    explicit CsvBuilder(std::vector<std::string> header) {
        for (std::size_t i = 0; i < header.size(); ++i) {
            if (i) body_ += ',';
            body_ += header[i];
        }
        body_ += '\n';
    }

    CsvBuilder& cell(const std::string& s) {
        if (!row_.empty()) row_ += ',';
        row_ += s;
        return *this;
    }

    CsvBuilder& cell(double v) {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.12g", v);
        return cell(std::string(buf));
    }

    CsvBuilder& cell(int v) { return cell(std::to_string(v)); }

    void end_row() {
        body_ += row_;
        body_ += '\n';
        row_.clear();
    }

    const std::string& str() const { return body_; }

  private:
    std::string body_;
    std::string row_;
};

}  // namespace attractorlab

#endif

#ifndef QFOLD_REPORT_HPP
#define QFOLD_REPORT_HPP

#include <string>
#include <vector>

namespace qfold {

struct check_item {
    std::string name;
    bool pass = true;
    std::string detail;
};

struct report {
    std::vector<check_item> items;

    void add(check_item c) { items.push_back(std::move(c)); }
    void add(std::vector<check_item> cs) {
        for (auto &c : cs) items.push_back(std::move(c));
    }
    bool all_pass() const {
        for (const auto &c : items)
            if (!c.pass) return false;
        return true;
    }
    int failures() const {
        int n = 0;
        for (const auto &c : items)
            if (!c.pass) ++n;
        return n;
    }
};

} // namespace qfold

#endif

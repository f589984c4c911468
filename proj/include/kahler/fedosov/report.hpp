#pragma once

#include <string>
#include <vector>

namespace kahler::fedosov {

// Structural checks are exact statements about the data; behavioral checks
// evaluate the star product on finitely many witnesses to finite order and
// are evidence only.
enum class evidence { exact, structural, behavioral };

inline const char *to_string(evidence e)
{
    switch (e) {
    case evidence::exact:
        return "exact";
    case evidence::structural:
        return "structural";
    case evidence::behavioral:
        return "behavioral (finite-order evidence)";
    }
    return "?";
}

struct check_result {
    std::string name;
    bool pass = true;
    evidence kind = evidence::exact;
    // Offending term or value on failure.
    std::string detail;
};

struct report {
    std::string title;
    std::vector<check_result> checks;

    void add(std::string name, bool pass, evidence kind, std::string detail = {})
    {
        checks.push_back({std::move(name), pass, kind, pass ? std::string() : std::move(detail)});
    }

    void append(const report &other)
    {
        for (const auto &c : other.checks) {
            checks.push_back({other.title.empty() ? c.name : other.title + "." + c.name, c.pass, c.kind, c.detail});
        }
    }

    bool passed() const
    {
        for (const auto &c : checks) {
            if (!c.pass) {
                return false;
            }
        }
        return true;
    }

    // Result of the first check with the given name, or false.
    bool passed(const std::string &name) const
    {
        for (const auto &c : checks) {
            if (c.name == name) {
                return c.pass;
            }
        }
        return false;
    }
};

} // namespace kahler::fedosov

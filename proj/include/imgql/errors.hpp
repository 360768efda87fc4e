#pragma once

#include <stdexcept>
#include <string>

namespace imgql {

// Pipeline phase in which a failure occurred. Drives the CLI exit code.
enum class Phase { Lex, Parse, Import, Elaborate, Type, Eval, Io };

const char* phase_name(Phase p);
int phase_exit_code(Phase p);

struct SourcePos {
    std::string file;
    int line = 0; // 1-based; 0 means unknown
    int col = 0;

    bool known() const { return line > 0; }
    std::string str() const;
};

class Error : public std::runtime_error {
public:
    Error(Phase phase, std::string message)
        : std::runtime_error(std::move(message)), phase_(phase) {}
    Error(Phase phase, std::string message, SourcePos pos)
        : std::runtime_error(std::move(message)), phase_(phase), pos_(std::move(pos)) {}

    Phase phase() const { return phase_; }
    const SourcePos& pos() const { return pos_; }

    // "<phase>: <message> at <file>:<line>:<col>"
    std::string diagnostic() const;

private:
    Phase phase_;
    SourcePos pos_;
};

} // namespace imgql

#include "imgql/errors.hpp"

namespace imgql {

const char* phase_name(Phase p) {
    switch (p) {
        case Phase::Lex: return "lexical error";
        case Phase::Parse: return "syntax error";
        case Phase::Import: return "import error";
        case Phase::Elaborate: return "elaboration error";
        case Phase::Type: return "type error";
        case Phase::Eval: return "evaluation error";
        case Phase::Io: return "i/o error";
    }
    return "error";
}

int phase_exit_code(Phase p) {
    switch (p) {
        case Phase::Lex:
        case Phase::Parse: return 2;
        case Phase::Import: return 3;
        case Phase::Elaborate:
        case Phase::Type: return 4;
        case Phase::Eval: return 5;
        case Phase::Io: return 6;
    }
    return 1;
}

std::string SourcePos::str() const {
    return file + ":" + std::to_string(line) + ":" + std::to_string(col);
}

std::string Error::diagnostic() const {
    std::string s = phase_name(phase_);
    s += ": ";
    s += what();
    if (pos_.known()) {
        s += " at ";
        s += pos_.str();
    }
    return s;
}

} // namespace imgql

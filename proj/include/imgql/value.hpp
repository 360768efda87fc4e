#pragma once

#include <memory>
#include <string>
#include <variant>

#include "imgql/fields.hpp"
#include "imgql/image_io.hpp"

namespace imgql {

// Runtime result of one task. Fields and models are shared immutably between
// workers; copying a Value never copies voxel data.
class Value {
public:
    Value() = default;
    explicit Value(double v) : v_(v) {}
    explicit Value(bool v) : v_(v) {}
    explicit Value(std::string v) : v_(std::move(v)) {}
    explicit Value(std::shared_ptr<const ModelImage> v) : v_(std::move(v)) {}
    explicit Value(std::shared_ptr<const BoolField> v) : v_(std::move(v)) {}
    explicit Value(std::shared_ptr<const NumField> v) : v_(std::move(v)) {}

    static Value of(BoolField f) { return Value(std::make_shared<const BoolField>(std::move(f))); }
    static Value of(NumField f) { return Value(std::make_shared<const NumField>(std::move(f))); }

    bool is_number() const { return std::holds_alternative<double>(v_); }
    bool is_bool() const { return std::holds_alternative<bool>(v_); }
    bool is_bool_field() const {
        return std::holds_alternative<std::shared_ptr<const BoolField>>(v_);
    }
    bool is_num_field() const {
        return std::holds_alternative<std::shared_ptr<const NumField>>(v_);
    }

    double number() const { return std::get<double>(v_); }
    bool boolean() const { return std::get<bool>(v_); }
    const std::string& text() const { return std::get<std::string>(v_); }
    const ModelImage& model() const {
        return *std::get<std::shared_ptr<const ModelImage>>(v_);
    }
    const BoolField& bool_field() const {
        return *std::get<std::shared_ptr<const BoolField>>(v_);
    }
    const NumField& num_field() const {
        return *std::get<std::shared_ptr<const NumField>>(v_);
    }

private:
    std::variant<std::monostate, double, bool, std::string,
                 std::shared_ptr<const ModelImage>, std::shared_ptr<const BoolField>,
                 std::shared_ptr<const NumField>>
        v_;
};

} // namespace imgql

namespace qec {
}  // namespace qec

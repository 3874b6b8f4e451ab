namespace tilespec {
}

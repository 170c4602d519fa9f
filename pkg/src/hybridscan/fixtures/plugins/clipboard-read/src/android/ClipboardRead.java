package org.example.clipboardread;

import org.apache.cordova.CallbackContext;
import org.apache.cordova.CordovaPlugin;
import org.apache.cordova.PluginResult;
import org.json.JSONArray;
import org.json.JSONException;
import org.json.JSONObject;
import android.content.ClipboardManager;

public class ClipboardRead extends CordovaPlugin {
    @Override
    public boolean execute(String action, JSONArray args, CallbackContext callbackContext) throws JSONException {
        ClipboardManager cm = (ClipboardManager) cordova.getActivity().getSystemService("clipboard");
        callbackContext.success(cm.getPrimaryClip().getItemAt(0).getText().toString());
        return true;
    }
}

package org.example.speechinput;

import org.apache.cordova.CallbackContext;
import org.apache.cordova.CordovaPlugin;
import org.apache.cordova.PluginResult;
import org.json.JSONArray;
import org.json.JSONException;
import org.json.JSONObject;
import android.speech.SpeechRecognizer;
import android.speech.RecognizerIntent;

public class SpeechInput extends CordovaPlugin {
    @Override
    public boolean execute(String action, JSONArray args, CallbackContext callbackContext) throws JSONException {
        SpeechRecognizer sr = SpeechRecognizer.createSpeechRecognizer(cordova.getActivity());
        String heard = listen(sr, RecognizerIntent.ACTION_RECOGNIZE_SPEECH);
        callbackContext.success(heard);
        return true;
    }
}
